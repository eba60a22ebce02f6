import json

import pytest

from main import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBuildAndMatrices:
    def test_build_edges(self, capsys):
        code, out, _ = run(capsys, "build", "1")
        assert code == 0
        assert len(out.splitlines()) == 12
        assert "bar:1 top:3" in out.splitlines()

    def test_build_json(self, capsys):
        code, out, _ = run(capsys, "build", "2", "--format", "json")
        assert code == 0
        assert len(json.loads(out)["vertices"]) == 20

    def test_laplacian_csv(self, capsys):
        code, out, _ = run(capsys, "laplacian", "1")
        rows = out.splitlines()
        assert code == 0
        assert len(rows) == 11
        assert rows[0].split(",")[0] == "2"

    def test_decompose_odd(self, capsys):
        code, out, _ = run(capsys, "decompose", "2", "--block", "odd", "--format", "coo")
        assert code == 0
        assert "5 5 4" in out.splitlines()

    def test_decompose_published_odd(self, capsys):
        code, out, _ = run(capsys, "decompose", "2", "--block", "published-odd", "--format", "coo")
        assert "5 5 3" in out.splitlines()

    def test_decompose_even_has_radicals(self, capsys):
        code, out, _ = run(capsys, "decompose", "1")
        assert code == 0
        assert "sqrt(2)" in out

    def test_charpoly_odd(self, capsys):
        code, out, _ = run(capsys, "charpoly", "S", "1")
        assert code == 0
        assert out.startswith("x^5 ")
        assert out.rstrip().endswith("- 45")

    def test_charpoly_json(self, capsys):
        code, out, _ = run(capsys, "charpoly", "A", "1", "--format", "json")
        coefficients = json.loads(out)
        assert coefficients[0] == "1"
        assert coefficients[-1] == "0"
        assert coefficients[-2] == "-11"


class TestKirchhoffAndComplexity:
    def test_closed(self, capsys):
        code, out, _ = run(capsys, "kirchhoff", "1")
        assert code == 0
        assert out == "317/4 ≈ 79.25\n"

    def test_resistance(self, capsys):
        code, out, _ = run(capsys, "kirchhoff", "1", "--method", "resistance")
        assert out == "84 ≈ 84.00\n"

    def test_eigen(self, capsys):
        code, out, _ = run(capsys, "kirchhoff", "1", "--method", "eigen")
        assert float(out) == pytest.approx(84, rel=1e-9)

    def test_complexity_methods(self, capsys):
        assert run(capsys, "complexity", "5")[1] == "27106512\n"
        assert run(capsys, "complexity", "2", "--method", "matrix-tree")[1] == "1976\n"
        assert run(capsys, "complexity", "1", "--method", "enumerate")[1] == "45\n"

    def test_enumerate_too_large(self, capsys):
        code, out, err = run(capsys, "complexity", "3", "--method", "enumerate")
        assert code == 2
        assert out == ""
        assert err

    def test_exact_cutoff(self, capsys):
        code, _, err = run(capsys, "--max-exact-n", "2", "kirchhoff", "3", "--method", "resistance")
        assert code == 2
        assert "3" in err

    def test_env_cutoff(self, capsys, monkeypatch):
        monkeypatch.setenv("HEPTASPEC_MAX_EXACT_N", "1")
        code, _, _ = run(capsys, "complexity", "2", "--method", "matrix-tree")
        assert code == 2

    def test_bad_env(self, capsys, monkeypatch):
        monkeypatch.setenv("HEPTASPEC_MAX_EXACT_N", "many")
        code, _, err = run(capsys, "complexity", "1")
        assert code == 2
        assert "HEPTASPEC_MAX_EXACT_N" in err

    def test_large_closed_form(self, capsys):
        code, out, _ = run(capsys, "complexity", "10000")
        assert code == 0
        assert out.strip().isdigit()


class TestTable:
    def test_complexity_csv(self, capsys):
        code, out, _ = run(capsys, "table", "complexity", "1", "3")
        assert code == 0
        rows = [line.split(",") for line in out.splitlines()[1:]]
        assert [r[1] for r in rows] == ["45", "1254", "34932"]

    def test_kirchhoff_single(self, capsys):
        code, out, _ = run(capsys, "table", "kirchhoff", "10", "10", "--format", "json")
        assert json.loads(out)[0]["kf_closed"] == "31334.44"

    def test_deterministic(self, capsys):
        first = run(capsys, "table", "kirchhoff", "1", "6")[1]
        second = run(capsys, "table", "kirchhoff", "1", "6")[1]
        assert first == second

    def test_bad_range(self, capsys):
        code, _, _ = run(capsys, "table", "kirchhoff", "5", "2")
        assert code == 2

    @pytest.mark.parametrize("argv", [["table", "kirchhoff", "0", "3"], ["table", "kirchhoff", "1", "2", "--format", "xml"]])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "table.csv"
        code, out, _ = run(capsys, "--out", str(target), "table", "complexity", "1", "2")
        assert code == 0
        assert out == ""
        assert target.read_text(encoding="utf-8").startswith("n,tau_closed")


class TestVerify:
    def test_verify_h1_passes_with_errata(self, capsys):
        code, out, _ = run(capsys, "verify", "1", "--format", "json")
        assert code == 0
        report = json.loads(out)
        entries = {e["quantity"]: e for e in report["entries"]}
        assert entries["det_odd"]["match"]
        assert entries["a5n_minus_1"]["erratum"] == "pair_minor_sum"
        assert report["passed"]

    def test_verify_text(self, capsys):
        code, out, _ = run(capsys, "verify", "2")
        assert code == 0
        assert "H_2" in out

    def test_verify_table_deviation_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--max-exact-n", "1", "verify", "37")
        assert code == 0
        assert "published_table_typo" in out

    def test_missing_command(self, capsys):
        assert run(capsys)[0] == 2
