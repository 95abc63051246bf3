import csv
import json

import pytest

from twocenter.cli import main
from twocenter.model import Params
from twocenter.periods import rotation_number
from twocenter.sturmian import SymbolWord


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestClassify:
    def test_lemniscate_point(self, capsys):
        code, out, _ = run(capsys, "classify", "--m1", "0.5", "--m2", "0.5",
                           "--h", "-0.23", "--g", "0.4")
        assert code == 0
        assert "region L" in out and "1 torus" in out

    def test_critical_point(self, capsys):
        code, out, _ = run(capsys, "classify", "--h", "-0.23", "--g", "0.77")
        assert code == 0
        assert "Critical" in out

    def test_missing_g_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--h", "-0.23"])
        assert exc.value.code == 2

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "classify", "--h", "-0.23", "--g", "-0.1",
                           "--format", "json")
        payload = json.loads(out)
        assert payload["region"] == "S"
        assert payload["critical"]["kappa_pp"] == pytest.approx(0.77)


class TestAtlas:
    def test_period_grid(self, tmp_path, capsys):
        out = tmp_path / "atlas.csv"
        code, _, _ = run(capsys, "atlas", "--h", "-0.23",
                         "--grid=-0.6:1.2:-0.5:-0.1:7x5", "--out", str(out))
        assert code == 0
        rows = list(csv.DictReader(open(out)))
        assert len(rows) == 35
        assert list(rows[0]) == ["g", "h", "region", "T_lambda", "T_nu", "W"]
        for row in rows:
            regular = row["region"] in ("S", "S'", "L", "P")
            assert (row["W"] != "") == regular

    def test_region_grid_columns(self, tmp_path, capsys):
        out = tmp_path / "regions.csv"
        run(capsys, "atlas", "--h", "-0.23", "--grid=-0.6:1.2:-0.5:-0.1:5",
            "--values", "regions", "--out", str(out))
        rows = list(csv.DictReader(open(out)))
        assert list(rows[0]) == ["g", "h", "region", "torus_count"]

    def test_matches_library_values(self, tmp_path, capsys):
        out = tmp_path / "atlas.csv"
        run(capsys, "atlas", "--h", "-0.23", "--grid", "0.4:0.4:-0.23:-0.23:2x2",
            "--out", str(out))
        rows = list(csv.DictReader(open(out)))
        td = rotation_number(0.4, Params(0.5, 0.5, -0.23))
        assert float(rows[0]["W"]) == td.W
        assert float(rows[0]["T_lambda"]) == td.T_lambda

    def test_asymmetric_region_adjacency(self, tmp_path, capsys):
        out = tmp_path / "asym.csv"
        run(capsys, "atlas", "--m1", "0.3", "--m2", "0.7", "--h", "-0.1667",
            "--grid=-0.8:1.6:-0.1667:-0.1667:49x2", "--values", "regions",
            "--out", str(out))
        regions = {row["region"] for row in csv.DictReader(open(out))}
        assert "S'" in regions and "S" not in regions
        assert "L" in regions and "P" in regions

    def test_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "atlas", "--h", "-0.3", "--grid=-0.5:1:-0.4:-0.2:5",
            "--out", str(a))
        run(capsys, "atlas", "--h", "-0.3", "--grid=-0.5:1:-0.4:-0.2:5",
            "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_png_figure(self, tmp_path, capsys):
        out = tmp_path / "atlas.csv"
        code, _, _ = run(capsys, "atlas", "--h", "-0.23",
                         "--grid=-0.6:1.2:-0.5:-0.1:9x7", "--out", str(out),
                         "--format", "csv,png")
        assert code == 0
        assert (tmp_path / "atlas.png").exists()


class TestPeriodsCommand:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "periods", "--h", "-0.23", "--g", "0.4")
        assert code == 0 and "region L" in out

    def test_error_exit(self, capsys):
        code, _, err = run(capsys, "periods", "--h", "-0.23", "--g", "5.0")
        assert code == 1 and "RegionError" in err


class TestWordAndOrbit:
    def test_word_command(self, capsys):
        code, out, _ = run(capsys, "word", "--h", "-0.23", "--W", "1",
                           "--region", "L")
        assert code == 0
        got = SymbolWord(out.strip(), cyclic=True)
        assert got.cyclically_equal(SymbolWord("1323", True), relabel=True)

    def test_orbit_writes_exports(self, tmp_path, capsys):
        base = tmp_path / "orbit"
        code, out, _ = run(capsys, "orbit", "--h", "-0.23", "--W", "1",
                           "--region", "L", "--out", str(base),
                           "--format", "csv,svg,png", "--seed", "5")
        assert code == 0
        word = out.strip().splitlines()[-1]
        assert SymbolWord(word, True).cyclically_equal(
            SymbolWord("1323", True), relabel=True)
        csv_path = tmp_path / "orbit.csv"
        svg = (tmp_path / "orbit.svg").read_text()
        assert csv_path.exists()
        header = csv_path.read_text().splitlines()[0]
        assert header == "tau,t,lambda,nu,x,y"
        assert svg.count("<path") == 1 and "<svg" in svg
        assert (tmp_path / "orbit.png").exists()

    def test_planetary_word(self, capsys):
        code, out, _ = run(capsys, "orbit", "--h", "-0.23", "--W", "1/2",
                           "--region", "P", "--seed", "2")
        assert code == 0
        assert SymbolWord(out.strip(), True).cyclically_equal(
            SymbolWord("1212", True))

    def test_long_run_lengths(self, capsys):
        code, out, _ = run(capsys, "orbit", "--h", "-0.23", "--W", "7",
                           "--region", "L", "--seed", "3")
        assert code == 0
        from twocenter.sturmian import is_balanced

        word = out.strip()
        report = is_balanced(SymbolWord(word, cyclic=True))
        assert set(report.run_lengths) <= {7, 8}

    def test_out_of_range_is_error(self, capsys):
        code, _, err = run(capsys, "orbit", "--h", "-0.23", "--W", "5",
                           "--region", "P")
        assert code == 1 and "OutOfRange" in err


class TestCollisionCommand:
    def test_two_orbits_reported(self, capsys):
        code, out, _ = run(capsys, "collision", "--h", "-0.23", "--W", "1",
                           "--region", "L")
        assert code == 0
        lines = [ln for ln in out.splitlines() if ln.startswith("orbit")]
        assert len(lines) == 2
        for ln in lines:
            res = float(ln.split("endpoint_residual=")[1])
            assert res < 1e-6


class TestVerifyCommand:
    def test_small_suite_passes(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code, _, _ = run(capsys, "verify", "--h", "-0.23", "--W", "1,2",
                         "--phases", "2", "--out", str(out))
        assert code == 0
        report = json.loads(out.read_text())
        assert report["pass"] is True

    def test_out_of_range_fails(self, capsys):
        code, out, _ = run(capsys, "verify", "--h", "-0.23", "--W", "40",
                           "--phases", "1", "--region", "P")
        assert code == 1
        assert "OutOfRange" in out


class TestEnumerateCommand:
    def test_catalog(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-len", "4")
        assert code == 0
        words = out.strip().splitlines()
        assert sorted(words) == sorted(["12", "1212", "1313", "1323", "2323"])
