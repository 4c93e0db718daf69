"""CLI surface: subcommands, exit codes, round-trips, determinism."""

import io
import json
import math

import numpy as np
import pytest

from sublorentz import Mat2C, PathSample
from sublorentz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_payload(out):
    return json.loads(out)


class TestExp:
    def test_central(self, capsys):
        code, out, _ = run(capsys, "exp", "--coeffs", "1,0,0,0", "--t", "2")
        assert code == 0
        payload = parse_payload(out)
        m = Mat2C.from_json(payload["result"]["matrix"])
        assert m.distance(Mat2C(math.e * np.eye(2))) < 1e-14
        assert payload["result"]["series_residual"] < 1e-14
        assert payload["config"]["subcommand"] == "exp"
        assert payload["config"]["t"] == 2.0

    def test_boost(self, capsys):
        code, out, _ = run(capsys, "exp", "--coeffs", "0,1,0,0", "--t", "1")
        m = Mat2C.from_json(parse_payload(out)["result"]["matrix"])
        assert abs(m.m[0, 0].real - math.cosh(0.5)) < 1e-14
        assert abs(m.m[0, 1].real - math.sinh(0.5)) < 1e-14

    def test_zero(self, capsys):
        code, out, _ = run(capsys, "exp", "--coeffs", "0,0,0,0", "--t", "5")
        m = Mat2C.from_json(parse_payload(out)["result"]["matrix"])
        assert m.distance(Mat2C.identity()) == 0.0

    def test_complex_coefficients(self, capsys):
        code, out, _ = run(capsys, "exp", "--coeffs", "0,1+1j,1j,0", "--t", "0.5")
        assert code == 0

    def test_parse_error_exit_code(self, capsys):
        code, _, err = run(capsys, "exp", "--coeffs", "1,0,0", "--t", "1")
        assert code == 2
        assert "error" in err


class TestGeodesic:
    def test_orthogonal_family_endpoint(self, capsys, tmp_path):
        out_file = tmp_path / "path.csv"
        t_cut = 2.0 * math.pi / math.sqrt(3.0)
        code, _, _ = run(
            capsys,
            "geodesic", "--kind", "subriemannian",
            "--alpha", "1,0,0", "--beta", "0,0,2",
            "--t-max", str(t_cut), "--samples", "100",
            "--out", str(out_file),
        )
        assert code == 0
        with open(out_file) as fh:
            path = PathSample.from_csv(fh)
        final = path.points[-1]
        assert final.is_unitary(1e-9)
        from sublorentz import to_coords

        assert np.max(np.abs(to_coords(final).u[1:4])) < 1e-9

    def test_timelike_ray_column(self, capsys):
        code, out, _ = run(
            capsys,
            "geodesic", "--kind", "timelike", "--alpha", "0,0,0",
            "--t-max", "1", "--samples", "5",
        )
        assert code == 0
        path = PathSample.from_csv(io.StringIO(out))
        for t, pt in zip(path.times, path.points):
            assert pt.distance(Mat2C(math.exp(t / 2.0) * np.eye(2))) < 1e-12

    def test_det_and_arclength_columns(self, capsys):
        code, out, _ = run(
            capsys,
            "geodesic", "--kind", "timelike", "--alpha", "0.3,0,0",
            "--beta", "0,0,1", "--t-max", "1", "--samples", "5",
        )
        header = next(l for l in out.splitlines() if not l.startswith("#"))
        assert header.endswith("det_re,det_im,arc_residual")
        rows = [l for l in out.splitlines() if l and not l.startswith("#")][1:]
        for row in rows:
            assert float(row.split(",")[-1]) < 1e-12  # arclength residual

    def test_empty_range_header_only(self, capsys):
        code, out, _ = run(
            capsys,
            "geodesic", "--kind", "subriemannian", "--alpha", "1,0,0",
            "--t-max", "1", "--samples", "0",
        )
        assert code == 0
        lines = [l for l in out.splitlines() if l]
        assert lines[0].startswith("# config")
        assert lines[1].startswith("t,g11_re")
        assert len(lines) == 2

    def test_normalization_flag(self, capsys):
        code, _, err = run(
            capsys,
            "geodesic", "--kind", "subriemannian", "--alpha", "2,0,0",
            "--t-max", "1", "--samples", "3",
        )
        assert code == 2  # rejected without --normalize, residual reported
        code2, out, _ = run(
            capsys,
            "geodesic", "--kind", "subriemannian", "--alpha", "2,0,0",
            "--t-max", "1", "--samples", "3", "--normalize",
        )
        assert code2 == 0


class TestClassify:
    def test_timelike(self, capsys):
        g = Mat2C(math.e * np.eye(2))
        code, out, _ = run(capsys, "classify", "--matrix", json.dumps(g.to_json()))
        assert code == 0
        result = parse_payload(out)["result"]
        assert result["class"] == "timelike"
        assert abs(result["distance"] - 2.0) < 1e-12

    def test_unreachable_marker(self, capsys):
        m = np.array([[math.cosh(0.5), math.sinh(0.5)], [math.sinh(0.5), math.cosh(0.5)]])
        code, out, _ = run(capsys, "classify", "--matrix", json.dumps(Mat2C(m).to_json()))
        assert code == 0
        assert parse_payload(out)["result"]["distance"] == "-inf"

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "classify", "--matrix", json.dumps(Mat2C.identity().to_json()))
        assert code == 0
        result = parse_payload(out)["result"]
        assert result["class"] == "identity" and result["distance"] == 0.0

    def test_indeterminate_exit_code(self, capsys):
        from sublorentz import SRGeodesicParams, distance_shoot, sr_geodesic

        p = SRGeodesicParams(np.array([0.6, 0.8, 0.0]), np.array([0.3, -0.4, 1.1]))
        g1 = sr_geodesic(p, 0.8)
        br = distance_shoot(g1, seed=5)
        xi = 0.5 * (br.lower + br.upper)
        g = Mat2C(math.exp(xi / 2.0) * g1.m)
        code, out, _ = run(
            capsys, "classify", "--matrix", json.dumps(g.to_json()), "--seed", "5"
        )
        assert code == 3
        assert parse_payload(out)["result"]["class"] == "indeterminate"

    def test_non_group_input_exit_code(self, capsys):
        code, _, err = run(
            capsys, "classify", "--matrix", json.dumps(Mat2C(np.diag([1.0, -1.0])).to_json())
        )
        assert code == 2

    def test_determinism(self, capsys):
        g = Mat2C(math.e * np.eye(2)).to_json()
        _, out1, _ = run(capsys, "classify", "--matrix", json.dumps(g), "--seed", "7")
        _, out2, _ = run(capsys, "classify", "--matrix", json.dumps(g), "--seed", "7")
        assert out1 == out2


class TestDistance:
    def test_boost_bracket(self, capsys):
        from sublorentz import ComplexAlgVec, exp_closed

        g1 = exp_closed(ComplexAlgVec.from_reals([0, 1, 0, 0]), 2.0)
        code, out, _ = run(capsys, "distance", "--matrix", json.dumps(g1.to_json()))
        assert code == 0
        result = parse_payload(out)["result"]
        assert abs(result["lower"] - 2.0) < 1e-12
        assert result["converged"] is True
        assert result["witness"]["T"] == pytest.approx(2.0, abs=1e-9)


class TestLongestArc:
    def test_reachable(self, capsys):
        g = Mat2C(math.e * np.eye(2))
        code, out, _ = run(
            capsys, "longest-arc", "--matrix", json.dumps(g.to_json()), "--samples", "11"
        )
        assert code == 0
        path = PathSample.from_csv(io.StringIO(out))
        assert path.points[-1].distance(g) < 1e-9

    def test_unreachable_exit(self, capsys):
        m = np.array([[math.cosh(0.5), math.sinh(0.5)], [math.sinh(0.5), math.cosh(0.5)]])
        code, _, err = run(capsys, "longest-arc", "--matrix", json.dumps(Mat2C(m).to_json()))
        assert code == 2
        assert '"unreachable"' in err


class TestExtremal:
    def test_pontryagin_ray(self, capsys):
        code, out, _ = run(
            capsys,
            "extremal", "pontryagin", "--psi0", "1,0,0,0,0,0,0",
            "--regime", "timelike", "--T", "1", "--step", "0.01",
        )
        assert code == 0
        path = PathSample.from_csv(io.StringIO(out))
        assert path.covectors is not None
        assert path.points[-1].distance(Mat2C(math.exp(0.5) * np.eye(2))) < 1e-9

    def test_abnormal(self, capsys):
        code, out, _ = run(
            capsys,
            "extremal", "abnormal", "--beta-dir", "0,0,1", "--regime", "timelike",
            "--kappa", "0:0,1:0.5,2:1", "--steps", "200",
        )
        assert code == 0
        path = PathSample.from_csv(io.StringIO(out))
        assert len(path.times) == 201


class TestHermitianCheck:
    def test_collinear(self, capsys):
        code, out, _ = run(capsys, "hermitian-check", "--alpha", "1,0,0", "--beta", "2,0,0")
        assert code == 0
        result = parse_payload(out)["result"]
        assert result["case"] == "collinear"
        assert result["residual"] < 1e-12


class TestValidate:
    def test_only_algebra(self, capsys):
        code, out, err = run(capsys, "validate", "--only", "algebra")
        assert code == 0
        payload = parse_payload(out)
        assert payload["result"]["all_passed"] is True
        assert len(payload["result"]["criteria"]) == 1
        assert payload["result"]["criteria"][0]["name"] == "algebraic-ground-truth"
        assert "PASS" in err

    def test_only_determinism(self, capsys):
        _, out1, _ = run(capsys, "validate", "--only", "algebra", "--seed", "7")
        _, out2, _ = run(capsys, "validate", "--only", "algebra", "--seed", "7")
        assert out1 == out2


class TestPlotScript:
    def test_references_csv(self, capsys, tmp_path):
        csv_file = tmp_path / "ray.csv"
        run(
            capsys,
            "geodesic", "--kind", "timelike", "--alpha", "0,0,0",
            "--t-max", "1", "--samples", "5", "--out", str(csv_file),
        )
        code, out, _ = run(
            capsys, "plot-script", "--csv", str(csv_file), "--y", "g11_re,g22_re"
        )
        assert code == 0
        assert str(csv_file) in out
        assert "plot" in out


class TestRoundTrips:
    def test_exp_output_feeds_classify(self, capsys, tmp_path):
        out_file = tmp_path / "exp.json"
        run(capsys, "exp", "--coeffs", "1,0,0,0", "--t", "2", "--out", str(out_file))
        payload = json.loads(out_file.read_text())
        mat_file = tmp_path / "m.json"
        mat_file.write_text(json.dumps(payload["result"]["matrix"]))
        code, out, _ = run(capsys, "classify", "--matrix", f"@{mat_file}")
        assert code == 0
        assert parse_payload(out)["result"]["class"] == "timelike"

    def test_csv_reread_matches(self, capsys, tmp_path):
        out_file = tmp_path / "p.csv"
        run(
            capsys,
            "geodesic", "--kind", "isotropic", "--alpha", "1,0,0", "--beta", "0,1,0",
            "--t-max", "2", "--samples", "9", "--out", str(out_file),
        )
        with open(out_file) as fh:
            first = PathSample.from_csv(fh)
        text = first.to_csv_text()
        second = PathSample.from_csv(io.StringIO(text))
        for a, b in zip(first.points, second.points):
            assert a.distance(b) == 0.0
