"""Structured random matrix generators, the example catalog, and
finite-section truncation families.

All randomness flows through ``numpy.random.default_rng``; identical seeds
yield bit-identical output.  Invertible cores are rejection-sampled under a
condition-number cap (default 1e4) so rank thresholds never sit near a
singular value.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .config import resolve
from .errors import InapplicableError, InputError
from .kernel import numerical_rank, require_square, svd_with_rank
from .predicates import classify, is_ep
from .subspaces import (
    Subspace,
    bouldin_angle,
    includes,
    kernel_basis,
    minimal_angle,
    range_basis,
)

_MAX_REJECTION_TRIES = 100_000

TRUNCATION_FAMILIES = ("tilted_projections", "shift_block", "weighted_shift")


@dataclass(frozen=True, eq=False)
class ExamplePair:
    """A named (a, b) pair with its expected facts and short notes."""

    name: str
    a: np.ndarray
    b: np.ndarray
    expected: dict
    notes: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class TiltedProjectionPair:
    """Two Hermitian idempotents whose ranges tilt together as n grows."""

    a: np.ndarray
    b: np.ndarray
    m1: Subspace
    m2: Subspace


@dataclass(frozen=True)
class TruncationMetrics:
    size: int
    cos_min_angle: float
    bouldin_cos: float
    sigma_min_plus: float
    ab_ep: bool
    residuals: dict


@dataclass(frozen=True, eq=False)
class TruncationSeries:
    family: str
    sizes: list
    metrics: list


def _rng(seed):
    return np.random.default_rng(seed)


def _complex_gaussian(rng, rows, cols):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2.0)


def random_unitary(n, seed=None):
    """Haar-like random unitary: QR of a complex Gaussian with the phases
    fixed so the triangular factor has positive real diagonal."""
    rng = _rng(seed)
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    z = _complex_gaussian(rng, n, n)
    q, r = np.linalg.qr(z)
    d = np.diag(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def _invertible_core(rng, r, cond_cap):
    """Complex Gaussian r x r, resampled until cond <= cond_cap."""
    if r == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    for _ in range(_MAX_REJECTION_TRIES):
        c = _complex_gaussian(rng, r, r)
        if np.linalg.cond(c) <= cond_cap:
            return c
    raise InputError(
        f"could not sample a {r}x{r} core with condition <= {cond_cap}"
    )


def _validate_rank(n, r):
    if not (0 <= r <= n):
        raise InputError(f"rank must satisfy 0 <= r <= {n}, got {r}")


def _embed(u, *blocks):
    """U (block-diagonal stack) U*."""
    n = u.shape[0]
    full = np.zeros((n, n), dtype=np.complex128)
    offset = 0
    for blk in blocks:
        k = blk.shape[0]
        full[offset : offset + k, offset : offset + k] = blk
        offset += k
    return u @ full @ u.conj().T


def random_ep(n, r, seed=None, cond_cap=1e4):
    """Random EP matrix of exact rank r: U (C ⊕ 0) U* with C invertible."""
    _validate_rank(n, r)
    if cond_cap <= 1.0:
        raise InputError("cond_cap must exceed 1")
    rng = _rng(seed)
    u = random_unitary(n, rng)
    c = _invertible_core(rng, r, cond_cap)
    return _embed(u, c, np.zeros((n - r, n - r), dtype=np.complex128))


def random_commuting_ep_pair(n, r, seed=None, cond_cap=1e4):
    """Commuting EP pair sharing the kernel-splitting unitary.

    The invertible cores share a random unitary eigenbasis with independent
    nonzero spectra, so they commute exactly up to roundoff; the second
    matrix additionally carries a random EP block on the complement.
    """
    _validate_rank(n, r)
    if r == 0:
        raise InputError("rank 0 not supported here; use random_same_kernel_pair")
    rng = _rng(seed)
    u = random_unitary(n, rng)
    v = random_unitary(r, rng)

    def spectrum():
        moduli = rng.uniform(1.0 / 3.0, 1.0, size=r)
        phases = rng.uniform(0.0, 2.0 * math.pi, size=r)
        return moduli * np.exp(1j * phases)

    a_core = v @ np.diag(spectrum()) @ v.conj().T
    b_core = v @ np.diag(spectrum()) @ v.conj().T
    z_rank = int(rng.integers(0, n - r + 1))
    z = _ep_block(rng, n - r, z_rank, cond_cap)
    a = _embed(u, a_core, np.zeros((n - r, n - r), dtype=np.complex128))
    b = _embed(u, b_core, z)
    return a, b


def _ep_block(rng, n, r, cond_cap):
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    u = random_unitary(n, rng)
    c = _invertible_core(rng, r, cond_cap)
    return _embed(u, c, np.zeros((n - r, n - r), dtype=np.complex128))


def random_same_kernel_pair(n, r, seed=None, cond_cap=1e4):
    """Two EP matrices of rank r with identical kernel (cores independent)."""
    _validate_rank(n, r)
    rng = _rng(seed)
    u = random_unitary(n, rng)
    zero = np.zeros((n - r, n - r), dtype=np.complex128)
    a = _embed(u, _invertible_core(rng, r, cond_cap), zero)
    b = _embed(u, _invertible_core(rng, r, cond_cap), zero)
    return a, b


def random_johnson_vinoth_pair(a, seed=None, cond_cap=1e4):
    """Random B with R(B) ⊆ R(A) and N(B) ⊆ N(A), for an EP input A.

    In finite dimensions these hypotheses force equality of ranges and of
    kernels, which is what the construction realizes: B shares A's
    splitting, with a fresh invertible core.
    """
    a = require_square(a)
    ep, residual = is_ep(a)
    if not ep:
        raise InapplicableError(f"input must be EP (residual {residual:.3e})")
    rng = _rng(seed)
    _, _, vh, decision = svd_with_rank(a)
    r = decision.rank
    n = a.shape[0]
    u = vh.conj().T  # [Q | K], Q spanning R(A*) = R(A)
    core = _invertible_core(rng, r, cond_cap)
    return _embed(u, core, np.zeros((n - r, n - r), dtype=np.complex128))


def _random_invariant_subspace(a, rng):
    n = a.shape[0]
    w, vecs = np.linalg.eig(a)
    if np.isfinite(vecs).all() and np.linalg.cond(vecs) <= 1e8:
        k = int(rng.integers(1, n + 1))
        idx = rng.choice(n, size=k, replace=False)
        return range_basis(vecs[:, np.sort(idx)])
    # ill-conditioned eigenbasis: fall back to the closure of a Krylov chain
    v = _complex_gaussian(rng, n, 1)
    columns = []
    cur = v
    for _ in range(n):
        norm = np.linalg.norm(cur)
        if norm == 0.0:
            break
        cur = cur / norm
        columns.append(cur)
        cur = a @ cur
    return range_basis(np.hstack(columns))


def random_invariant_range_b(a, seed=None, cfg=None):
    """Random B whose range is an A-invariant subspace, so R(AB) ⊆ R(B)."""
    a = require_square(a)
    cfg = resolve(cfg)
    n = a.shape[0]
    if n == 0:
        return a.copy()
    rng = _rng(seed)
    for _ in range(64):
        s = _random_invariant_subspace(a, rng)
        if s.dim == 0:
            continue
        m = _complex_gaussian(rng, s.dim, n)
        if numerical_rank(m, cfg).rank < s.dim:
            continue
        b = s.basis @ m
        if includes(range_basis(a @ b, cfg), range_basis(b, cfg), cfg):
            return b
    raise InputError("failed to draw an invariant-range factor for this matrix")


# ---------------------------------------------------------------------------
# Exact example catalog


def _catalog_entries():
    shear = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=np.complex128)
    proj = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
    sym = np.array([[1.0, 1.0j], [1.0j, -1.0]], dtype=np.complex128)
    jordan = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    return {
        "shear_projection_pair": ExamplePair(
            name="shear_projection_pair",
            a=shear,
            b=proj,
            expected={
                "a_ep": True,
                "b_ep": True,
                "ab_posinormal": True,
                "ab_ep": True,
                "ba_posinormal": False,
                "ba_ep": False,
            },
            notes={
                "ab": "shear-first product is the Hermitian projection diag(1,0)",
                "ba": "projection-first product maps onto span{e1} while its "
                "adjoint range is the diagonal line: ranges differ",
            },
        ),
        "epr_not_ep": ExamplePair(
            name="epr_not_ep",
            a=sym,
            b=sym,
            expected={"a_ep_r": True, "a_ep": False, "a_rank": 1},
            notes={
                "a": "complex symmetric, so kernel(a) = kernel(a^T); but the "
                "range is spanned by (1, i) while the adjoint range is "
                "spanned by (1, -i)",
            },
        ),
        "jordan2": ExamplePair(
            name="jordan2",
            a=jordan,
            b=jordan,
            expected={
                "a_ep": False,
                "a_rank": 1,
                "a_squared_rank": 0,
                "rank_stable_under_squaring": False,
                "power_ep": [False, True],
            },
            notes={"a": "nilpotent block: squaring kills the rank"},
        ),
    }


def catalog_names():
    return sorted(_catalog_entries())


def catalog(name):
    entries = _catalog_entries()
    try:
        return entries[name]
    except KeyError:
        raise InputError(
            f"unknown catalog name {name!r}; known: {', '.join(sorted(entries))}"
        ) from None


# ---------------------------------------------------------------------------
# Truncation families


def tilted_projection_pair(n):
    """Two (2n+2)-dimensional Hermitian idempotents with closing angle.

    m1 is spanned by the even coordinates e_0, e_2, ..., e_2n; m2 by the
    normalized vectors e_2k + e_{2k+1}/(2k+1).  The cosine of their minimal
    angle is 1/sqrt(1 + 1/(2n+1)^2), climbing to 1 as n grows, while the
    two spaces intersect only in 0 at every n.
    """
    if n < 0:
        raise InputError("truncation index must be >= 0")
    dim = 2 * n + 2
    m1_basis = np.zeros((dim, n + 1), dtype=np.complex128)
    m2_basis = np.zeros((dim, n + 1), dtype=np.complex128)
    for k in range(n + 1):
        m1_basis[2 * k, k] = 1.0
        weight = 1.0 / (2 * k + 1)
        scale = 1.0 / math.sqrt(1.0 + weight**2)
        m2_basis[2 * k, k] = scale
        m2_basis[2 * k + 1, k] = weight * scale
    m1 = Subspace(dim, m1_basis)
    m2 = Subspace(dim, m2_basis)
    a = np.eye(dim, dtype=np.complex128) - m1_basis @ m1_basis.conj().T
    b = m2_basis @ m2_basis.conj().T
    return TiltedProjectionPair(a=a, b=b, m1=m1, m2=m2)


def shift_block_pair(m):
    """Block pair built from a truncated forward shift.

    A = 0 ⊕ I and B = [[F, P], [0, F*]] on C^{2m}, where F is the m x m
    forward shift (last basis vector mapped to 0) and P projects onto the
    first coordinate.  The untruncated version of B is unitary; truncation
    leaves the rank-one defect ||BB* - I|| = 1, B loses EP-ness, and the
    product AB = 0 ⊕ F* is neither posinormal nor coposinormal, while the
    range and kernel conditions of the product test still hold.
    """
    if m < 2:
        raise InputError("block size must be >= 2")
    f = np.zeros((m, m), dtype=np.complex128)
    for j in range(m - 1):
        f[j + 1, j] = 1.0
    p = np.zeros((m, m), dtype=np.complex128)
    p[0, 0] = 1.0
    zero = np.zeros((m, m), dtype=np.complex128)
    eye = np.eye(m, dtype=np.complex128)
    a = np.block([[zero, zero], [zero, eye]])
    b = np.block([[f, p], [zero, f.conj().T]])
    return ExamplePair(
        name=f"shift_block_{m}",
        a=a,
        b=b,
        expected={
            "a_ep": True,
            "b_ep": False,
            "ab_ep": False,
            "ab_posinormal": False,
            "ab_coposinormal": False,
            "cond_i": True,
            "cond_ii": True,
            "unitary_defect": 1.0,
        },
        notes={
            "b": "one lost shift direction: kernel(b) and kernel(b*) sit in "
            "different blocks",
            "ab": "0 ⊕ backward-shift: its range and adjoint range are "
            "incomparable coordinate spans at finite size",
        },
    )


def weighted_shift_truncation(m):
    """m x m lower shift with subdiagonal weights 1, 1/2, ..., 1/(m-1).

    Nilpotent; its singular values are exactly the weights plus one zero,
    so the smallest above-threshold singular value is 1/(m-1), decaying to
    0 along the family.
    """
    if m < 2:
        raise InputError("truncation size must be >= 2")
    w = np.zeros((m, m), dtype=np.complex128)
    for i in range(m - 1):
        w[i + 1, i] = 1.0 / (i + 1)
    return w


def _sigma_min_plus(m, cfg):
    decision = numerical_rank(m, cfg)
    if decision.rank == 0:
        return math.nan
    return float(decision.singular_values[decision.rank - 1])


def _metrics_for_pair(size, a, b, cfg, extra_residuals):
    ab = a @ b
    n_a = kernel_basis(a, cfg)
    r_b = range_basis(b, cfg)
    if n_a.dim and r_b.dim:
        cos = minimal_angle(n_a, r_b).cos_min_angle
    else:
        cos = math.nan
    bouldin = bouldin_angle(a, b, cfg).cos_min_angle
    return TruncationMetrics(
        size=int(size),
        cos_min_angle=cos,
        bouldin_cos=bouldin,
        sigma_min_plus=_sigma_min_plus(ab, cfg),
        ab_ep=bool(classify(ab, cfg).ep),
        residuals=extra_residuals,
    )


def sweep(family, sizes, cfg=None):
    """Per-size metrics for one truncation family.

    Reported per size: cosine of the minimal angle between kernel(a) and
    range(b), the deflated-kernel (product-closedness) cosine, the smallest
    above-threshold singular value of the product, and the product's EP
    flag.  Monotonicity assertions are left to callers.
    """
    cfg = resolve(cfg)
    if family not in TRUNCATION_FAMILIES:
        raise InputError(
            f"unknown family {family!r}; known: {', '.join(TRUNCATION_FAMILIES)}"
        )
    sizes = [int(s) for s in sizes]
    if any(later <= earlier for earlier, later in zip(sizes, sizes[1:])):
        raise InputError("sizes must be strictly increasing")
    metrics = []
    for size in sizes:
        if family == "tilted_projections":
            pair = tilted_projection_pair(size)
            a, b = pair.a, pair.b
            extra = {
                "a_idempotency": float(np.linalg.norm(a @ a - a)),
                "b_idempotency": float(np.linalg.norm(b @ b - b)),
            }
        elif family == "shift_block":
            pair = shift_block_pair(size)
            a, b = pair.a, pair.b
            eye = np.eye(b.shape[0])
            extra = {"unitary_defect": float(np.linalg.norm(b @ b.conj().T - eye))}
        else:
            w = weighted_shift_truncation(size)
            a, b = w, np.eye(size, dtype=np.complex128)
            extra = {"nilpotency": float(np.linalg.norm(np.linalg.matrix_power(w, size)))}
        metrics.append(_metrics_for_pair(size, a, b, cfg, extra))
    return TruncationSeries(family=family, sizes=sizes, metrics=metrics)
