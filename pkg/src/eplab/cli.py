"""Command-line front end.

Every invocation prints a single JSON report envelope on stdout with the
keys command/inputs/tolerances/result/violations/version.  Exit codes:
0 success (and no fuzz violations), 1 fuzz violations found, 2 usage or
parse errors.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import ToleranceConfig
from .errors import EplabError, InapplicableError, InputError
from .fuzz import SUITES, run_suite
from .generators import TRUNCATION_FAMILIES, catalog, catalog_names, sweep
from .matfile import read_matrix, write_matrix
from .predicates import classify
from .products import djordjevic_check, hartwig_katz, johnson_vinoth_check
from .structure import (
    block_kernel_inclusions,
    decompose_pair,
    posinormal_product_conditions,
)


def _jsonable(value):
    if is_dataclass(value) and not isinstance(value, type):
        return _jsonable(asdict(value))
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) else value
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def _envelope(command, inputs, cfg, result, violations=()):
    return {
        "command": command,
        "inputs": _jsonable(inputs),
        "tolerances": {
            "rank_multiplier": cfg.rank_multiplier,
            "subspace_tol": cfg.subspace_tol,
            "psd_tol": cfg.psd_tol,
        },
        "result": _jsonable(result),
        "violations": _jsonable(list(violations)),
        "version": __version__,
    }


def _emit(envelope):
    json.dump(envelope, sys.stdout, indent=2)
    sys.stdout.write("\n")


def parse_size_list(text):
    """Parse "5", "2:8", or "2,4,8" into a sorted list of sizes."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" in chunk:
            lo_s, _, hi_s = chunk.partition(":")
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise InputError(f"empty size range {chunk!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(chunk))
    if not out:
        raise InputError(f"no sizes in {text!r}")
    return sorted(set(out))


def _classification_result(report):
    return {
        "flags": {
            "normal": report.normal,
            "hyponormal": report.hyponormal,
            "quasiposinormal": report.quasiposinormal,
            "posinormal": report.posinormal,
            "coposinormal": report.coposinormal,
            "ep": report.ep,
            "hypo_ep": report.hypo_ep,
            "ep_r": report.ep_r,
        },
        "residuals": report.residuals,
        "rank": {
            "rank": report.rank.rank,
            "threshold": report.rank.threshold,
            "singular_values": report.rank.singular_values,
        },
        "conflicts": list(report.conflicts),
    }


def cmd_classify(args, cfg):
    m = read_matrix(args.path)
    report = classify(m, cfg)
    _emit(_envelope("classify", {"path": args.path}, cfg, _classification_result(report)))
    return 0


def cmd_product(args, cfg):
    a = read_matrix(args.path_a)
    b = read_matrix(args.path_b)
    hk = hartwig_katz(a, b, cfg)
    result = {
        "hartwig_katz": hk,
        "johnson_vinoth": johnson_vinoth_check(a, b, cfg),
    }
    try:
        result["djordjevic"] = djordjevic_check(a, b, cfg)
    except InapplicableError as exc:
        result["djordjevic"] = {"applicable": False, "reason": str(exc)}
    _emit(
        _envelope(
            "product", {"path_a": args.path_a, "path_b": args.path_b}, cfg, result
        )
    )
    return 0


def cmd_decompose(args, cfg):
    a = read_matrix(args.path_a)
    b = read_matrix(args.path_b)
    dec = decompose_pair(a, b, cfg)
    result = {
        "core_dim": dec.core_dim,
        "kernel_dim": dec.kernel_dim,
        "residuals": dec.residuals,
        "conditions": posinormal_product_conditions(dec, cfg),
    }
    try:
        result["kernel_inclusions"] = block_kernel_inclusions(dec, cfg)
    except InapplicableError as exc:
        result["kernel_inclusions"] = {"applicable": False, "reason": str(exc)}
    _emit(
        _envelope(
            "decompose", {"path_a": args.path_a, "path_b": args.path_b}, cfg, result
        )
    )
    return 0


def cmd_fuzz(args, cfg):
    dims = parse_size_list(args.dims)
    outcome = run_suite(
        args.suite, args.trials, dims, seed=args.seed, jobs=args.jobs, cfg=cfg
    )
    # the jobs count is deliberately absent: the report is schedule
    # independent, so parallel and sequential runs emit identical documents
    result = {
        "suite": outcome.suite,
        "trials": outcome.trials,
        "dims": list(outcome.dims),
        "seed": outcome.seed,
        "checks": outcome.checks,
        "violation_count": len(outcome.violations),
        "ok": outcome.ok,
    }
    _emit(
        _envelope(
            "fuzz",
            {
                "suite": args.suite,
                "trials": args.trials,
                "dims": args.dims,
                "seed": args.seed,
            },
            cfg,
            result,
            violations=outcome.violations,
        )
    )
    return 0 if outcome.ok else 1


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if math.isnan(value) else repr(value)
    return str(value)


def cmd_truncate(args, cfg):
    sizes = parse_size_list(args.dims)
    series = sweep(args.family, sizes, cfg)
    rows = [
        {
            "size": m.size,
            "cos_min_angle": m.cos_min_angle,
            "bouldin_cos": m.bouldin_cos,
            "sigma_min_plus": m.sigma_min_plus,
            "ab_ep": m.ab_ep,
        }
        for m in series.metrics
    ]
    if args.out:
        header = "size,cos_min_angle,bouldin_cos,sigma_min_plus,ab_ep"
        lines = [header]
        for row in rows:
            lines.append(
                ",".join(
                    _csv_cell(row[key])
                    for key in (
                        "size",
                        "cos_min_angle",
                        "bouldin_cos",
                        "sigma_min_plus",
                        "ab_ep",
                    )
                )
            )
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    result = {
        "family": series.family,
        "sizes": series.sizes,
        "rows": rows,
        "csv": args.out,
    }
    _emit(
        _envelope(
            "truncate",
            {"family": args.family, "sizes": args.dims, "out": args.out},
            cfg,
            result,
        )
    )
    return 0


def cmd_catalog(args, cfg):
    if args.name is None:
        result = {"names": catalog_names()}
        _emit(_envelope("catalog", {}, cfg, result))
        return 0
    pair = catalog(args.name)
    result = {
        "name": pair.name,
        "shape": list(pair.a.shape),
        "expected": pair.expected,
        "notes": pair.notes,
    }
    if args.emit:
        out_dir = Path(args.out or ".")
        out_dir.mkdir(parents=True, exist_ok=True)
        path_a = out_dir / f"{pair.name}_a.cmat"
        path_b = out_dir / f"{pair.name}_b.cmat"
        write_matrix(path_a, pair.a)
        write_matrix(path_b, pair.b)
        result["files"] = [str(path_a), str(path_b)]
    _emit(_envelope("catalog", {"name": args.name}, cfg, result))
    return 0


def _default_seed():
    raw = os.environ.get("EPLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="eplab",
        description="Classification, product tests, block decompositions, "
        "truncation sweeps, and theorem fuzzing for complex matrices.",
    )
    parser.add_argument("--tol-rank-mult", type=float, default=50.0)
    parser.add_argument("--tol-subspace", type=float, default=1e-8)
    parser.add_argument("--tol-psd", type=float, default=1e-10)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one matrix file")
    p.add_argument("path")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("product", help="product decision procedures for a pair")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.set_defaults(handler=cmd_product)

    p = sub.add_parser("decompose", help="block decomposition of a pair")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("fuzz", help="run a seeded theorem-fuzzing suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--dims", default="2:8")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_fuzz)

    p = sub.add_parser("truncate", help="sweep a truncation family, emit CSV")
    p.add_argument("family", choices=TRUNCATION_FAMILIES)
    p.add_argument("--dims", required=True, help="sizes, e.g. 0:20 or 2,4,8")
    p.add_argument("--out", default=None, help="CSV output path")
    p.set_defaults(handler=cmd_truncate)

    p = sub.add_parser("catalog", help="list or emit the example catalog")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--emit", action="store_true", help="write CMAT files")
    p.add_argument("--out", default=None, help="output directory for --emit")
    p.set_defaults(handler=cmd_catalog)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = ToleranceConfig(
            rank_multiplier=args.tol_rank_mult,
            subspace_tol=args.tol_subspace,
            psd_tol=args.tol_psd,
        )
        return args.handler(args, cfg)
    except InputError as exc:
        print(f"eplab: error: {exc}", file=sys.stderr)
        return 2
    except InapplicableError as exc:
        print(f"eplab: inapplicable: {exc}", file=sys.stderr)
        return 2
    except EplabError as exc:
        print(f"eplab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"eplab: error: {exc}", file=sys.stderr)
        return 2


def main_entry():
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
