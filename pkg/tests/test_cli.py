"""End-to-end tests of the command-line subcommands."""

import csv
import re

import numpy as np
import pytest

from instance_io import load_instance, save_instance
import main as main_module
from main import main, parse_int_list, parse_methods


@pytest.fixture
def identity_file(tmp_path):
    path = tmp_path / "identity.json"
    save_instance(str(path), np.eye(3), np.eye(3), np.eye(3), 1.0, 10.0)
    return str(path)


@pytest.fixture
def neg_axis_file(tmp_path):
    path = tmp_path / "neg_axis.json"
    save_instance(str(path), np.diag([-1.0, 1.0, 1.0]), np.eye(3), np.eye(3), 1.0, 4.0)
    return str(path)


def _report_number(out, label):
    match = re.search(rf"{re.escape(label)}\s*:\s*([-+0-9.eE]+)", out)
    assert match, f"{label!r} missing from report"
    return float(match.group(1))


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


class TestParsers:
    def test_int_list(self):
        assert parse_int_list("1..5") == [1, 2, 3, 4, 5]
        assert parse_int_list("100,200") == [100, 200]
        assert parse_int_list("1..2,7") == [1, 2, 7]

    def test_empty_list(self):
        with pytest.raises(ValueError):
            parse_int_list(",")

    def test_methods(self):
        assert parse_methods("dim,exact") == ["dim", "exact"]
        with pytest.raises(ValueError):
            parse_methods("dim,newton")


class TestGen:
    def test_round_trip(self, tmp_path):
        out = tmp_path / "g.json"
        assert main(["gen", "--n", "100", "--seed", "1", "--alpha", "1", "--beta", "10",
                     "--out", str(out)]) == 0
        p = load_instance(str(out))
        assert p.n == 100
        save_instance(str(tmp_path / "again.json"), p.A, p.B, p.C, p.alpha, p.beta)
        assert (tmp_path / "again.json").read_bytes() == out.read_bytes()

    def test_same_seed_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["gen", "--n", "5", "--seed", "3", "--out", str(a)])
        main(["gen", "--n", "5", "--seed", "3", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_too_small(self, tmp_path, capsys):
        assert main(["gen", "--n", "2", "--seed", "1", "--out", str(tmp_path / "x.json")]) == 1
        assert "DimensionTooSmall" in capsys.readouterr().out


class TestSolve:
    def test_identity(self, identity_file, tmp_path, capsys):
        trace = tmp_path / "trace.csv"
        assert main(["solve", identity_file, "--method", "exact", "--tol", "1e-8",
                     "--trace-out", str(trace)]) == 0
        out = capsys.readouterr().out
        assert _report_number(out, "Value") == pytest.approx(0.0, abs=1e-8)
        rows = _read_csv(trace)
        assert len(rows) == int(rows[-1]["k"])
        assert f"Trace ({len(rows)} rows)" in out

    def test_alpha_zero_is_reduced(self, tmp_path, capsys):
        path = tmp_path / "zero.json"
        save_instance(str(path), np.eye(3), np.eye(3), np.eye(3), 0.0, 10.0)
        assert main(["solve", str(path), "--tol", "1e-10"]) == 0
        out = capsys.readouterr().out
        assert "alpha = 0" in out
        assert _report_number(out, "Value") == pytest.approx(-0.25, abs=1e-8)

    def test_missing_file(self, tmp_path):
        assert main(["solve", str(tmp_path / "missing.json")]) == 2

    def test_bad_bounds(self, tmp_path):
        path = tmp_path / "bad.json"
        save_instance(str(path), np.eye(3), np.eye(3), np.eye(3), 10.0, 1.0)
        assert main(["solve", str(path)]) == 1

    def test_unknown_method_rejected_by_parser(self, identity_file):
        with pytest.raises(SystemExit):
            main(["solve", identity_file, "--method", "newton"])


class TestBench:
    def test_table(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert main(["bench", "--n", "6", "--seeds", "1..3", "--methods", "dim,exact",
                     "--max-iter", "50", "--workers", "2", "--out", str(out)]) == 0
        rows = _read_csv(out)
        assert len(rows) == 3 * 2 + 2
        assert [r["seed"] for r in rows[-2:]] == ["avg", "avg"]
        assert list(rows[0].keys())[:3] == ["n", "seed", "method"]

    @pytest.mark.parametrize("threads, requested, expected", [(2, 8, 2), (2, 1, 1), (0, 8, 8), (0, 0, 1)])
    def test_workers_respect_thread_cap(self, tmp_path, monkeypatch, threads, requested, expected):
        seen = {}

        def fake_run_bench(**kwargs):
            seen["workers"] = kwargs["workers"]
            return []

        monkeypatch.setattr(main_module, "QR_THREADS", threads)
        monkeypatch.setattr(main_module, "BENCH_WORKERS", threads or 4)
        monkeypatch.setattr(main_module, "run_bench", fake_run_bench)
        assert main(["bench", "--n", "5", "--seeds", "1", "--workers", str(requested),
                     "--out", str(tmp_path / "b.csv")]) == 0
        assert seen["workers"] == expected


class TestCheck:
    def test_identity_passes(self, identity_file, capsys):
        assert main(["check", identity_file, "--num-dirs", "1000"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_negative_axis_passes(self, neg_axis_file, capsys):
        assert main(["check", neg_axis_file, "--num-dirs", "5000", "--seed", "2"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out
        assert _report_number(out, "Solver value") == pytest.approx(-6.0, abs=1e-6)

    def test_truncated_solve_still_sandwiches(self, neg_axis_file, capsys):
        assert main(["check", neg_axis_file, "--max-iter", "1", "--num-dirs", "1000"]) == 0
        assert "Cert. gap" in capsys.readouterr().out

    def test_dimension_limit(self, tmp_path, capsys):
        path = tmp_path / "big.json"
        main(["gen", "--n", "20", "--seed", "1", "--out", str(path)])
        assert main(["check", str(path), "--max-n", "16"]) == 1
        assert "OracleDimensionLimit" in capsys.readouterr().out


class TestApplications:
    def test_maxeig(self, tmp_path, capsys):
        path = tmp_path / "eig.json"
        save_instance(str(path), np.eye(3), np.diag([4.0, 1.0, 1.0]), np.eye(3), 1.0, 10.0)
        assert main(["maxeig", str(path)]) == 0
        out = capsys.readouterr().out
        assert _report_number(out, "Via annulus solve") == pytest.approx(4.0, rel=1e-8)

    def test_penalty(self, tmp_path, capsys):
        path = tmp_path / "pen.json"
        save_instance(str(path), np.zeros((3, 3)), np.eye(3), np.eye(3), 0.5, 4.0)
        assert main(["penalty", str(path), "--rho", "10"]) == 0
        assert "PENALTY SOLVE" in capsys.readouterr().out

    def test_penalty_needs_positive_rho(self, tmp_path):
        path = tmp_path / "pen.json"
        save_instance(str(path), np.zeros((3, 3)), np.eye(3), np.eye(3), 0.5, 4.0)
        assert main(["penalty", str(path), "--rho", "0"]) == 1


def test_help_lists_csv_columns(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "k,s,t,f,gamma,gap,q_xhat,lower_bound,lambda_g,delta_k" in out
    assert "n,seed,method,time_s" in out
