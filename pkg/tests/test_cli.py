import json
import subprocess
import sys

import numpy as np
import pytest

from cyclic_jacobi.cli import CSV_HEADER, main
from cyclic_jacobi.core import SymMatrix, format_matrix


@pytest.fixture
def diag_matrix_file(tmp_path):
    path = tmp_path / "diag.txt"
    path.write_text(format_matrix(SymMatrix.diag([1.0, 2.0, 3.0, 4.0])))
    return str(path)


@pytest.fixture
def spd_matrix_file(tmp_path):
    rng = np.random.default_rng(8)
    factor = rng.uniform(-1, 1, (4, 4))
    path = tmp_path / "spd.txt"
    path.write_text(format_matrix(SymMatrix.from_dense(factor.T @ factor)))
    return str(path)


class TestClassifyCommand:
    def test_single_ordering_csv(self, capsys):
        code = main(["classify", "--ordering", "1 2, 1 3, 2 3, 1 4, 2 4, 3 4"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "ordering,label,d_or_shift,gamma,tau,t0"
        assert "SerialPerm(column)" in lines[1]

    def test_all_produces_720_rows(self, tmp_path):
        out = tmp_path / "all.csv"
        code = main(["classify", "--all", "--out", str(out)])
        assert code == 0
        rows = out.read_text().strip().splitlines()
        assert len(rows) == 721  # header + 720

    def test_catalog_exits_zero(self, capsys):
        code = main(["classify", "--catalog"])
        out = capsys.readouterr().out
        assert code == 0
        assert "120" in out

    def test_json_includes_certificate(self, capsys):
        code = main(
            ["classify", "--ordering", "1 2, 3 4, 1 3, 2 4, 1 4, 2 3", "--format", "json"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["label"] == "Parallel(par, shift=2)"
        assert payload[0]["certificate"][0].startswith("source:")

    def test_duplicate_pair_is_input_error(self, capsys):
        code = main(["classify", "--ordering", "1 2, 1 2, 2 3, 1 4, 2 4, 3 4"])
        assert code == 2
        assert "input error" in capsys.readouterr().err

    def test_catalog_failure_exits_one(self, monkeypatch, capsys):
        import cyclic_jacobi.cli as climod
        from cyclic_jacobi.classification import CatalogReport

        monkeypatch.setattr(
            climod, "verify_catalog",
            lambda: CatalogReport(["entry 1: synthetic failure"], {}),
        )
        code = main(["classify", "--catalog"])
        capsys.readouterr()
        assert code == 1


class TestSolveCommand:
    def test_diagonal_matrix_reports_zero_off_norm(self, diag_matrix_file, tmp_path):
        report = tmp_path / "run.json"
        code = main(
            [
                "solve",
                "--matrix", diag_matrix_file,
                "--ordering", "1 2, 1 3, 2 3, 1 4, 2 4, 3 4",
                "--cycles", "3",
                "--report", str(report),
            ]
        )
        assert code == 0
        payload = json.loads(report.read_text())
        assert all(v == 0.0 for v in payload["cycle_off_norms"])
        assert payload["final_diagonal"] == [1.0, 2.0, 3.0, 4.0]

    def test_missing_file_is_input_error(self, tmp_path):
        code = main(
            [
                "solve",
                "--matrix", str(tmp_path / "nope.txt"),
                "--ordering", "1 2, 1 3, 2 3, 1 4, 2 4, 3 4",
                "--cycles", "1",
            ]
        )
        assert code == 2


class TestJsolveCommand:
    def test_identity_factor(self, tmp_path):
        report = tmp_path / "j.json"
        code = main(
            ["jsolve", "--L", "identity", "--J", "+1 +1 -1 -1", "--report", str(report)]
        )
        assert code == 0
        payload = json.loads(report.read_text())
        assert payload["eigenvalues"] == [1.0, 1.0, -1.0, -1.0]
        assert payload["converged"] is True

    def test_spd_matrix_with_monitor(self, spd_matrix_file, tmp_path):
        report = tmp_path / "j.json"
        code = main(
            [
                "jsolve",
                "--A", spd_matrix_file,
                "--J", "+1 +1 -1 -1",
                "--ordering", "1 3, 2 4, 1 4, 2 3, 1 2, 3 4",
                "--monitor", "0.05",
                "--report", str(report),
            ]
        )
        assert code == 0
        payload = json.loads(report.read_text())
        assert payload["monitor"]["cascade_ok"] is True
        assert payload["residual_norms"] if "residual_norms" in payload else True

    def test_breakdown_is_numeric_error(self, tmp_path):
        bad = tmp_path / "indefinite.txt"
        bad.write_text("1 2\n2 1\n")
        code = main(["jsolve", "--A", str(bad), "--J", "+1 -1", "--ordering", "1 2"])
        assert code == 3

    def test_monitor_on_serial_ordering_is_input_error(self, spd_matrix_file):
        code = main(
            [
                "jsolve",
                "--A", spd_matrix_file,
                "--J", "+1 +1 -1 -1",
                "--monitor", "0.05",
            ]
        )
        assert code == 2


class TestVerifyCommand:
    def test_serial_campaign_clean(self, tmp_path):
        out = tmp_path / "report.csv"
        code = main(
            [
                "verify",
                "--seed", "1",
                "--samples", "10",
                "--orderings", "serial",
                "--bound", "universal",
                "--out", str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == CSV_HEADER
        assert len(lines) == 2 + 48
        assert all(line.endswith(",0") for line in lines[2:])

    def test_byte_identical_reports(self, tmp_path):
        args = [
            "verify", "--seed", "7", "--samples", "5",
            "--orderings", "parallel", "--bound", "both",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_jobs_do_not_change_output(self, tmp_path):
        base = [
            "verify", "--seed", "3", "--samples", "5",
            "--orderings", "c0", "--bound", "classified",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(base + ["--out", str(a), "--jobs", "1"]) == 0
        assert main(base + ["--out", str(b), "--jobs", "2"]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_ordering_list_file(self, tmp_path):
        listing = tmp_path / "orderings.txt"
        listing.write_text("1 2, 1 3, 2 3, 1 4, 2 4, 3 4\n1 2, 3 4, 1 3, 2 4, 1 4, 2 3\n")
        out = tmp_path / "r.csv"
        code = main(
            [
                "verify", "--seed", "2", "--samples", "5",
                "--orderings", "list", str(listing),
                "--bound", "classified", "--out", str(out),
            ]
        )
        assert code == 0
        assert len(out.read_text().splitlines()) == 4

    def test_missing_seed_is_usage_error(self):
        assert main(["verify", "--samples", "5"]) == 2

    def test_jpl_jobs_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("JPL_JOBS", "2")
        out = tmp_path / "env.csv"
        base = [
            "verify", "--seed", "3", "--samples", "5",
            "--orderings", "serial", "--bound", "classified",
        ]
        assert main(base + ["--out", str(out)]) == 0
        monkeypatch.delenv("JPL_JOBS")
        ref = tmp_path / "ref.csv"
        assert main(base + ["--out", str(ref), "--jobs", "1"]) == 0
        assert out.read_bytes() == ref.read_bytes()


def test_solve_reports_are_byte_identical(tmp_path):
    rng = np.random.default_rng(12)
    raw = rng.uniform(-1, 1, (4, 4))
    matrix = tmp_path / "m.txt"
    matrix.write_text(format_matrix(SymMatrix.from_dense((raw + raw.T) / 2)))
    args = [
        "solve", "--matrix", str(matrix),
        "--ordering", "1 2, 1 3, 2 3, 1 4, 2 4, 3 4", "--cycles", "4",
    ]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--report", str(a)]) == 0
    assert main(args + ["--report", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclic_jacobi", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "cjacobi" in proc.stdout
