"""CLI subcommands: artifacts, determinism, round trips, exit codes."""

import math
import subprocess
import sys

import numpy as np
import pytest

from otruled import (OTSurface, catalog, curvatures, geodesic_curvature_exact,
                     linear_angle, s_parameter_curve, striction_line)
from otruled.cli import main, parse_range, parse_tols
from otruled.errors import ConfigParseError

HELIX = ["--curve", "helix-ex1", "--theta", "linear(1)"]


def run_cli(args):
    return main(args)


def test_parse_range():
    assert parse_range("0:2:5") == (0.0, 2.0, 5)
    a, b, n = parse_range("0:3*pi:100")
    assert abs(b - 3 * np.pi) < 1e-15 and n == 100
    for bad in ("1:2", "2:1:5", "0:1:1", "a:b:c", "0:1:2.5"):
        with pytest.raises(ConfigParseError):
            parse_range(bad)


def test_parse_tols():
    assert parse_tols(["rtol=1e-7", "tol_helix=2e-6"]) == {"rtol": 1e-7, "tol_helix": 2e-6}
    for bad in (["bogus=1"], ["rtol"], ["rtol=-1"]):
        with pytest.raises(ConfigParseError):
            parse_tols(bad)


def test_exit_codes(tmp_path):
    out = ["--out", str(tmp_path)]
    assert run_cli(["classify", "--curve", "circle", "--theta", "linear(1)"] + out) == 0
    assert run_cli(["classify", "--curve", "nosuch", "--theta", "linear(1)"] + out) == 1
    assert run_cli(["classify", "--curve", "helix-ex1"] + out) == 1
    assert run_cli(["sample", *HELIX, "--s-range", "0:99:5"] + out) == 1
    assert run_cli(["sample", *HELIX, "--tol", "bogus=1"] + out) == 1
    assert run_cli(["classify", "--curve", "line", "--theta", "constant(0.5)"] + out) == 2
    assert run_cli(["verify", *HELIX, "--tol", "rtol=1e-14", "--seed", "3"] + out) == 3
    assert run_cli(["verify", *HELIX, "--seed", "3"] + out) == 0


def test_sample_small_mesh(tmp_path):
    code = run_cli(["sample", *HELIX, "--s-range", "1:2:2",
                    "--u-range", "0.1:0.9:2", "--out", str(tmp_path)])
    assert code == 0
    obj = (tmp_path / "mesh.obj").read_text().strip().splitlines()
    verts = [l for l in obj if l.startswith("v ")]
    faces = [l for l in obj if l.startswith("f ")]
    assert len(verts) == 4 and len(faces) == 1
    assert faces[0] == "f 1 3 4 2"
    rows = (tmp_path / "mesh.csv").read_text().strip().splitlines()
    assert rows[0] == "s_index,u_index,s,u,K,H,f,g,singular"
    assert len(rows) == 5


def test_sample_marks_singular_vertices(tmp_path):
    # the grid corner (0, 0) is a singular point: masked, K/H nan, coordinates finite
    run_cli(["sample", *HELIX, "--s-range", "0:3.141592653589793:2",
             "--u-range", "0:1:2", "--out", str(tmp_path)])
    rows = (tmp_path / "mesh.csv").read_text().strip().splitlines()[1:]
    first = rows[0].split(",")
    assert first[8] == "1"
    assert first[4] == "nan" and first[5] == "nan"
    for line in (tmp_path / "mesh.obj").read_text().strip().splitlines():
        if line.startswith("v "):
            assert all(math.isfinite(float(x)) for x in line.split()[1:])


def test_mesh_watertight(tmp_path):
    run_cli(["sample", *HELIX, "--s-range", "0.2:9:20",
             "--u-range", "0.1:1:10", "--out", str(tmp_path)])
    obj = (tmp_path / "mesh.obj").read_text().strip().splitlines()
    n_verts = sum(1 for l in obj if l.startswith("v "))
    quads = [tuple(int(x) for x in l.split()[1:]) for l in obj if l.startswith("f ")]
    assert n_verts == 200 and len(quads) == 19 * 9
    edges = {}
    for q in quads:
        assert all(1 <= i <= n_verts for i in q)
        for a, b in zip(q, q[1:] + q[:1]):
            edges[(min(a, b), max(a, b))] = edges.get((min(a, b), max(a, b)), 0) + 1
    # interior edges shared by exactly two quads, boundary edges by one
    assert set(edges.values()) == {1, 2}
    n_boundary = sum(1 for v in edges.values() if v == 1)
    assert n_boundary == 2 * 19 + 2 * 9


def test_determinism(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    for d in (d1, d2):
        run_cli(["curvature-field", *HELIX, "--s-range", "0.3:9:15",
                 "--u-range", "0.1:0.9:7", "--out", str(d)])
        run_cli(["verify", *HELIX, "--seed", "5", "--out", str(d)])
    assert (d1 / "curvature.csv").read_bytes() == (d2 / "curvature.csv").read_bytes()
    assert (d1 / "verify.csv").read_bytes() == (d2 / "verify.csv").read_bytes()


def test_curvature_field_round_trip(tmp_path):
    run_cli(["curvature-field", *HELIX, "--s-range", "0.3:9:7",
             "--u-range", "0.2:0.8:4", "--out", str(tmp_path)])
    sf = OTSurface(curve=catalog.helix_ex1(), angle=linear_angle(1.0))
    rows = (tmp_path / "curvature.csv").read_text().strip().splitlines()
    assert rows[0] == "s,u,E,F,G,L,M,N,K,H,lambda1,lambda2"
    assert len(rows) == 1 + 7 * 4
    for line in rows[1:]:
        vals = [float(x) for x in line.split(",")]
        cd = curvatures(sf, vals[0], vals[1])
        expect = (cd.E, cd.F, cd.G, cd.L, cd.M, cd.N, cd.K, cd.H,
                  cd.lambda1, cd.lambda2)
        assert vals[2:] == [float("%.17g" % x) for x in expect]
        assert vals[2:] == list(expect)  # 17 digits round-trips doubles exactly


def test_oncurve_csv_uses_exact_kappa_g(tmp_path):
    run_cli(["oncurve", *HELIX, "--curve-on-surface", "param-s(0.5)",
             "--s-range", "0.3:9:10", "--t-range", "0.3:9:5", "--out", str(tmp_path)])
    sf = OTSurface(curve=catalog.helix_ex1(), angle=linear_angle(1.0))
    c = s_parameter_curve(0.5, (0.3, 9.0))
    rows = (tmp_path / "oncurve.csv").read_text().strip().splitlines()
    assert rows[0] == "t,s,u,k_n,kappa_g,tau_g"
    assert len(rows) == 6
    for line in rows[1:]:
        vals = [float(x) for x in line.split(",")]
        assert vals[4] == geodesic_curvature_exact(sf, c, vals[0])


def test_striction_round_trip(tmp_path):
    run_cli(["striction", *HELIX, "--s-range", "0:9:6", "--out", str(tmp_path)])
    sf = OTSurface(curve=catalog.helix_ex1(), angle=linear_angle(1.0))
    rows = (tmp_path / "striction.csv").read_text().strip().splitlines()
    assert rows[0] == "s,x,y,z"
    for line in rows[1:]:
        vals = [float(x) for x in line.split(",")]
        assert np.array_equal(np.asarray(vals[1:]), striction_line(sf, vals[0]))


def test_singular_report_text(tmp_path, capsys):
    assert run_cli(["singular", *HELIX, "--out", str(tmp_path)]) == 0
    text = (tmp_path / "singular.txt").read_text()
    assert "S (sin(theta) zeros" in text
    assert "point = (1, 0, 0)" in text
    assert "4 points" in text
    capsys.readouterr()


def test_singular_plane_mode(tmp_path):
    run_cli(["singular", "--curve", "circle", "--theta", "linear(1)",
             "--out", str(tmp_path)])
    assert "plane mode" in (tmp_path / "singular.txt").read_text()


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "job.ini"
    cfg.write_text("[curve]\nname = helix-ex1\n\n[angle]\nspec = linear(1)\n\n"
                   "[grid]\ns = 1:2:4\nu = 0.1:0.9:3\n\n[output]\ndir = %s\n"
                   % (tmp_path / "cfgout"))
    assert run_cli(["curvature-field", "--config", str(cfg)]) == 0
    rows = (tmp_path / "cfgout" / "curvature.csv").read_text().strip().splitlines()
    assert len(rows) == 1 + 4 * 3
    # a flag beats the config grid
    assert run_cli(["curvature-field", "--config", str(cfg), "--s-range", "1:2:2"]) == 0
    rows = (tmp_path / "cfgout" / "curvature.csv").read_text().strip().splitlines()
    assert len(rows) == 1 + 2 * 3


def test_config_expression_curve(tmp_path):
    cfg = tmp_path / "expr.ini"
    cfg.write_text("[curve]\nx = cos(t)\ny = sin(t)\nz = 0.3*t\ndomain = 0:6\n"
                   "parametrization = general\n\n[angle]\nspec = constant(0.7)\n")
    assert run_cli(["classify", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    text = (tmp_path / "classify.txt").read_text()
    assert "is_plane: False" in text


def test_console_script_installed(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "otruled.cli", "classify",
                           *HELIX, "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "is_helicoid: False" in proc.stdout
