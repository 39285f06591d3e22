import json

import numpy as np
import pytest

from eplab import write_matrix
from eplab.cli import main, parse_size_list

G = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
P = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, json.loads(out), err


class TestParseSizeList:
    def test_forms(self):
        assert parse_size_list("5") == [5]
        assert parse_size_list("2:5") == [2, 3, 4, 5]
        assert parse_size_list("8,2,4") == [2, 4, 8]
        assert parse_size_list("2:4,9") == [2, 3, 4, 9]

    def test_empty(self):
        with pytest.raises(Exception):
            parse_size_list(",")


class TestClassifyCommand:
    def test_posinormal_flags_for_both_orders(self, tmp_path, capsys):
        gp, pg = tmp_path / "gp.cmat", tmp_path / "pg.cmat"
        write_matrix(gp, G @ P)
        write_matrix(pg, P @ G)
        code, doc, _ = run_json(capsys, "classify", str(gp))
        assert code == 0
        assert doc["command"] == "classify"
        assert doc["result"]["flags"]["posinormal"] is True
        code, doc, _ = run_json(capsys, "classify", str(pg))
        assert code == 0
        assert doc["result"]["flags"]["posinormal"] is False

    def test_zero_matrix_all_true(self, tmp_path, capsys):
        path = tmp_path / "z.cmat"
        write_matrix(path, np.zeros((3, 3)))
        code, doc, _ = run_json(capsys, "classify", str(path))
        assert code == 0
        assert all(doc["result"]["flags"].values())

    def test_malformed_file_exits_2_with_line(self, tmp_path, capsys):
        path = tmp_path / "bad.cmat"
        path.write_text("cmat 1 2 2\n1 2\n3\n")
        code, out, err = run_cli(capsys, "classify", str(path))
        assert code == 2
        assert "line 3" in err

    def test_missing_file_exits_2(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "classify", str(tmp_path / "absent.cmat"))
        assert code == 2
        assert err

    def test_tolerance_flags_are_echoed(self, tmp_path, capsys):
        path = tmp_path / "m.cmat"
        write_matrix(path, np.eye(2))
        code, doc, _ = run_json(
            capsys, "--tol-subspace", "1e-6", "classify", str(path)
        )
        assert code == 0
        assert doc["tolerances"]["subspace_tol"] == 1e-6


class TestProductCommand:
    def test_shear_projection_report(self, tmp_path, capsys):
        pa, pb = tmp_path / "a.cmat", tmp_path / "b.cmat"
        write_matrix(pa, G)
        write_matrix(pb, P)
        code, doc, _ = run_json(capsys, "product", str(pa), str(pb))
        assert code == 0
        hk = doc["result"]["hartwig_katz"]
        assert hk["cond_i"] and hk["cond_ii"] and hk["ab_ep"]
        assert doc["result"]["djordjevic"]["ab_ep"] is True

    def test_size_mismatch_exits_2(self, tmp_path, capsys):
        pa, pb = tmp_path / "a.cmat", tmp_path / "b.cmat"
        write_matrix(pa, np.eye(2))
        write_matrix(pb, np.eye(3))
        code, _, err = run_cli(capsys, "product", str(pa), str(pb))
        assert code == 2
        assert "mismatch" in err

    def test_identity_pair_all_true(self, tmp_path, capsys):
        pa = tmp_path / "i.cmat"
        write_matrix(pa, np.eye(2))
        code, doc, _ = run_json(capsys, "product", str(pa), str(pa))
        assert code == 0
        hk = doc["result"]["hartwig_katz"]
        assert all(
            hk[k]
            for k in ("cond_i", "cond_ii", "ab_ep", "a_ep", "b_ep", "range_identity")
        )


class TestDecomposeCommand:
    def test_diagonal_pair(self, tmp_path, capsys):
        pa, pb = tmp_path / "a.cmat", tmp_path / "b.cmat"
        write_matrix(pa, np.diag([1.0, 0.0]))
        write_matrix(pb, np.diag([2.0, 3.0]))
        code, doc, _ = run_json(capsys, "decompose", str(pa), str(pb))
        assert code == 0
        assert doc["result"]["core_dim"] == 1
        assert doc["result"]["kernel_inclusions"]["kernel_z_included"] is True
        assert doc["result"]["conditions"]["y_zero"] is True

    def test_noncommuting_pair_marked_inapplicable(self, tmp_path, capsys):
        pa, pb = tmp_path / "a.cmat", tmp_path / "b.cmat"
        write_matrix(pa, np.diag([1.0, 0.0]))
        write_matrix(pb, G)
        code, doc, _ = run_json(capsys, "decompose", str(pa), str(pb))
        assert code == 0
        assert doc["result"]["kernel_inclusions"]["applicable"] is False
        assert doc["result"]["residuals"]["commutation"] > 0.5


class TestFuzzCommand:
    def test_clean_suite_exits_0(self, capsys):
        code, doc, _ = run_json(
            capsys, "fuzz", "hartwig_katz", "--trials", "15", "--dims", "2:5",
            "--seed", "3",
        )
        assert code == 0
        assert doc["result"]["ok"] is True
        assert doc["violations"] == []

    def test_envelope_deterministic_across_jobs(self, capsys):
        args = ("fuzz", "collapse", "--trials", "20", "--dims", "2:6", "--seed", "9")
        code1, out1, _ = run_cli(capsys, *args, "--jobs", "1")
        code2, out2, _ = run_cli(capsys, *args, "--jobs", "2")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_env_seed_default(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setenv("EPLAB_SEED", "321")
        code, doc, _ = run_json(
            capsys, "fuzz", "powers", "--trials", "2", "--dims", "2:3"
        )
        assert code == 0
        assert doc["result"]["seed"] == 321

    def test_bad_suite_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "fuzz", "not_a_suite", "--trials", "1")
        assert code == 2


class TestTruncateCommand:
    def test_csv_output_and_stability(self, tmp_path, capsys):
        out = tmp_path / "series.csv"
        args = (
            "truncate", "tilted_projections", "--dims", "0:6", "--out", str(out),
        )
        code, doc, _ = run_json(capsys, *args)
        assert code == 0
        first = out.read_bytes()
        header = first.decode().splitlines()[0]
        assert header == "size,cos_min_angle,bouldin_cos,sigma_min_plus,ab_ep"
        assert len(first.decode().splitlines()) == 8
        code, _, _ = run_cli(capsys, *args)
        assert code == 0
        assert out.read_bytes() == first  # bit-stable across runs

    def test_weighted_shift_sigma_column(self, tmp_path, capsys):
        out = tmp_path / "w.csv"
        code, doc, _ = run_json(
            capsys, "truncate", "weighted_shift", "--dims", "2:10", "--out", str(out)
        )
        assert code == 0
        for row in doc["result"]["rows"]:
            assert row["sigma_min_plus"] == pytest.approx(1 / (row["size"] - 1))
            assert row["ab_ep"] is False

    def test_unknown_family_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "truncate", "nope", "--dims", "2:3")
        assert code == 2


class TestCatalogCommand:
    def test_list_names(self, capsys):
        code, doc, _ = run_json(capsys, "catalog")
        assert code == 0
        assert len(doc["result"]["names"]) >= 3

    def test_emit_and_reclassify(self, tmp_path, capsys):
        code, doc, _ = run_json(
            capsys, "catalog", "shear_projection_pair", "--emit", "--out", str(tmp_path)
        )
        assert code == 0
        file_a, file_b = doc["result"]["files"]
        code, doc_a, _ = run_json(capsys, "classify", file_a)
        assert code == 0
        assert doc_a["result"]["flags"]["ep"] is True  # the shear is invertible
        code, doc_b, _ = run_json(capsys, "classify", file_b)
        assert doc_b["result"]["flags"]["normal"] is True

    def test_unknown_name(self, capsys):
        code, _, err = run_cli(capsys, "catalog", "missing")
        assert code == 2
        assert "unknown catalog name" in err


class TestEnvelopeShape:
    def test_stable_keys(self, tmp_path, capsys):
        path = tmp_path / "m.cmat"
        write_matrix(path, np.eye(2))
        _, doc, _ = run_json(capsys, "classify", str(path))
        assert list(doc) == [
            "command", "inputs", "tolerances", "result", "violations", "version",
        ]
        assert doc["version"]

    def test_json_round_trips(self, tmp_path, capsys):
        path = tmp_path / "m.cmat"
        write_matrix(path, np.diag([1.0, 0.0]))
        _, out, _ = run_cli(capsys, "classify", str(path))
        doc = json.loads(out)
        assert json.loads(json.dumps(doc)) == doc
