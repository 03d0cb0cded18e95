import json
import math

import pytest

from elastic_splines.cli import main

from oracles import RISE_D


class TestConstantsCommand:
    def test_prints_key_values(self, capsys):
        assert main(["constants"]) == 0
        out = capsys.readouterr().out
        values = dict(line.split() for line in out.strip().splitlines())
        assert float(values["d"]) == pytest.approx(RISE_D, abs=1e-11)
        assert float(values["psi_deg"]) == pytest.approx(37.09, abs=0.05)
        assert float(values["t_star"]) > math.pi / 2


class TestFitCommand:
    def test_collinear(self, tmp_path, capsys):
        points = tmp_path / "pts.txt"
        points.write_text("0,0\n1,0\n2,0\n")
        svg = tmp_path / "out.svg"
        report = tmp_path / "report.json"
        code = main(["fit", str(points), "--svg", str(svg), "--report", str(report)])
        assert code == 0
        out = capsys.readouterr().out
        assert "total_energy 0" in out
        assert svg.read_text().startswith("<svg")
        data = json.loads(report.read_text())
        assert data["total_energy"] == 0.0

    def test_clamp_flag(self, tmp_path, capsys):
        points = tmp_path / "pts.txt"
        points.write_text("0,0\n2,0\n")
        report = tmp_path / "r.json"
        assert main(["fit", str(points), "--clamp", "90,-90",
                     "--report", str(report)]) == 0
        data = json.loads(report.read_text())
        assert data["per_segment"][0]["kind"] == "u_turn_arc"
        assert data["total_energy"] == pytest.approx(RISE_D ** 2 / 2.0, abs=1e-9)

    def test_missing_file_exits_2(self, capsys):
        assert main(["fit", "no-such-file.txt"]) == 2

    def test_malformed_file_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("0,0\noops\n")
        assert main(["fit", str(bad)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_deterministic_output(self, tmp_path, capsys):
        points = tmp_path / "pts.txt"
        points.write_text("0,0\n1,0.2\n2.1,0.1\n3,0.4\n")
        r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["fit", str(points), "--report", str(r1)]) == 0
        assert main(["fit", str(points), "--report", str(r2)]) == 0
        assert r1.read_bytes() == r2.read_bytes()

    def test_non_convergence_exits_3(self, tmp_path, capsys):
        points = tmp_path / "pts.txt"
        points.write_text("0,0\n1,0.2\n2.1,0.1\n3,0.4\n")
        report = tmp_path / "r.json"
        code = main(["fit", str(points), "--max-sweeps", "1",
                     "--angle-tol", "1e-14", "--report", str(report)])
        assert code == 3
        data = json.loads(report.read_text())
        assert data["converged"] is False
        assert data["sweeps"] == 1


class TestHermiteCommand:
    def test_radians(self, capsys):
        assert main(["hermite", "--alpha", "0.5", "--beta", "-0.2"]) == 0
        values = dict(line.split() for line in capsys.readouterr().out.strip().splitlines())
        assert values["kind"] == "elastica_arc"
        assert float(values["breadth"]) == 1.0

    def test_degrees_flag(self, capsys):
        assert main(["hermite", "--alpha", "90", "--beta", "-90", "--deg"]) == 0
        values = dict(line.split() for line in capsys.readouterr().out.strip().splitlines())
        assert values["kind"] == "u_turn_arc"
        assert float(values["energy"]) == pytest.approx(RISE_D ** 2, abs=1e-9)

    def test_out_of_range_exits_2(self, capsys):
        assert main(["hermite", "--alpha", "2.0", "--beta", "0.0"]) == 2


class TestVerifyCommand:
    def test_small_grid_passes(self, capsys):
        assert main(["verify", "--grid", "20"]) == 0
        out = capsys.readouterr().out
        assert "[ok ]" in out
        assert "FAIL" not in out
