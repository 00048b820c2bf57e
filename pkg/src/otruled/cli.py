"""Command line front end: build a surface from flags/config, emit artifacts.

Subcommands: sample, curvature-field, singular, striction, classify, oncurve,
verify. Config files are INI-style with [curve], [angle], [grid], [output]
blocks (plus [oncurve] for surface-curve runs); flags override config. All
CSV output uses 17 significant digits so reruns are byte-identical.

Exit codes: 0 ok, 1 config error, 2 numeric/domain error, 3 verification
tolerance breach.
"""

import argparse
import configparser
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import sympy as sp

from . import catalog, oncurve, verify
from .curves import reparametrize_by_arclength
from .errors import (ConfigParseError, CylindricalDirection, OtruledError,
                     SingularPoint)
from .otframe import make_angle
from .surface import (OTSurface, _scalars, base_curve_status, classify_surface,
                      curvatures, position, singular_set, striction_line)

_FMT = "%.17g"


def _fmt(x):
    return _FMT % float(x)


def _const(text):
    try:
        return float(sp.sympify(text, locals={"pi": sp.pi}).evalf())
    except (sp.SympifyError, TypeError, ValueError) as exc:
        raise ConfigParseError("bad numeric value %r: %s" % (text, exc))


def parse_range(text, what="range"):
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigParseError("%s must be a:b:n, got %r" % (what, text))
    a, b = _const(parts[0]), _const(parts[1])
    try:
        n = int(parts[2])
    except ValueError:
        raise ConfigParseError("%s count must be an integer, got %r" % (what, parts[2]))
    if n < 2:
        raise ConfigParseError("%s count must be >= 2, got %d" % (what, n))
    if not b > a:
        raise ConfigParseError("%s is empty: %r" % (what, text))
    return a, b, n


_TOL_NAMES = ("rtol", "tol_helix", "tol_class", "tol_min", "flat_tol")


def parse_tols(items):
    tols = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigParseError("--tol expects NAME=VALUE, got %r" % item)
        name, val = item.split("=", 1)
        name = name.strip().replace("-", "_")
        if name not in _TOL_NAMES:
            raise ConfigParseError("unknown tolerance %r (known: %s)" % (name, ", ".join(_TOL_NAMES)))
        fval = _const(val)
        if not fval > 0.0:
            raise ConfigParseError("tolerance %s must be > 0" % name)
        tols[name] = fval
    return tols


@dataclass
class JobConfig:
    command: str
    surface: OTSurface
    s_range: tuple
    u_range: tuple
    out_dir: Path
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    surface_curve: object = None
    t_range: tuple = None


@dataclass
class MeshOutput:
    """Grid mesh of the surface with per-vertex scalar channels.

    Coordinates are defined everywhere (phi itself has no singularities);
    K and H are nan at masked vertices where the normal is undefined, while
    f and g remain meaningful there.
    """

    s_vals: np.ndarray
    u_vals: np.ndarray
    vertices: np.ndarray
    faces: list
    channels: dict
    mask: np.ndarray


def build_mesh(surface, s_range, u_range):
    s_lo, s_hi, ns = s_range
    u_lo, u_hi, nu = u_range
    s_vals = np.linspace(s_lo, s_hi, ns)
    u_vals = np.linspace(u_lo, u_hi, nu)
    verts = np.empty((ns * nu, 3))
    K = np.empty(ns * nu)
    H = np.empty(ns * nu)
    fs = np.empty(ns * nu)
    gs = np.empty(ns * nu)
    mask = np.zeros(ns * nu, dtype=int)
    for i, s in enumerate(s_vals):
        for j, u in enumerate(u_vals):
            k = i * nu + j
            d = _scalars(surface, s, u)
            verts[k] = d.alpha + u * d.q
            fs[k] = d.f
            gs[k] = d.g
            try:
                cd = curvatures(surface, s, u)
                K[k], H[k] = cd.K, cd.H
            except SingularPoint:
                K[k] = H[k] = math.nan
                mask[k] = 1
    faces = []
    for i in range(ns - 1):
        for j in range(nu - 1):
            a = i * nu + j + 1  # OBJ indices are 1-based
            faces.append((a, a + nu, a + nu + 1, a + 1))
    return MeshOutput(s_vals=s_vals, u_vals=u_vals, vertices=verts, faces=faces,
                      channels={"K": K, "H": H, "f": fs, "g": gs}, mask=mask)


def export_mesh(mesh, obj_path):
    """Write the OBJ mesh and its sidecar channel CSV next to it."""
    obj_path = Path(obj_path)
    with open(obj_path, "w") as fh:
        for v in mesh.vertices:
            fh.write("v %s %s %s\n" % (_fmt(v[0]), _fmt(v[1]), _fmt(v[2])))
        for q in mesh.faces:
            fh.write("f %d %d %d %d\n" % q)
    csv_path = obj_path.with_suffix(".csv")
    nu = len(mesh.u_vals)
    with open(csv_path, "w") as fh:
        fh.write("s_index,u_index,s,u,K,H,f,g,singular\n")
        for i, s in enumerate(mesh.s_vals):
            for j, u in enumerate(mesh.u_vals):
                k = i * nu + j
                fh.write("%d,%d,%s,%s,%s,%s,%s,%s,%d\n" % (
                    i, j, _fmt(s), _fmt(u), _fmt(mesh.channels["K"][k]),
                    _fmt(mesh.channels["H"][k]), _fmt(mesh.channels["f"][k]),
                    _fmt(mesh.channels["g"][k]), mesh.mask[k]))
    return obj_path, csv_path


def _parse_surface_curve(spec, s_items, cfg):
    if spec:
        spec = spec.strip()
        for prefix in ("ruling", "param-s"):
            if spec.startswith(prefix + "(") and spec.endswith(")"):
                val = _const(spec[len(prefix) + 1:-1])
                if prefix == "ruling":
                    return oncurve.ruling_curve(val, (cfg["u_range"][0], cfg["u_range"][1]))
                return oncurve.s_parameter_curve(val, (cfg["s_range"][0], cfg["s_range"][1]))
        if spec.startswith("linear(") and spec.endswith(")"):
            vals = [_const(p) for p in spec[len("linear("):-1].split(",")]
            if len(vals) != 4:
                raise ConfigParseError("linear(...) needs c1,c2,d1,d2")
            return oncurve.linear_curve(*vals, t_range=cfg["t_range"][:2])
        raise ConfigParseError("bad surface-curve spec %r" % spec)
    if s_items.get("s") and s_items.get("u"):
        return oncurve.curve_from_t_expressions(s_items["s"], s_items["u"], cfg["t_range"][:2])
    raise ConfigParseError("oncurve needs --curve-on-surface or [oncurve] s =/u = expressions")


def build_job(args):
    ini = configparser.ConfigParser()
    if args.config:
        read = ini.read(args.config)
        if not read:
            raise ConfigParseError("config file %r not found" % args.config)

    def cfg_get(section, key, default=None):
        return ini.get(section, key, fallback=default)

    curve_name = args.curve or cfg_get("curve", "name")
    if curve_name:
        curve = catalog.get_curve(curve_name)
    elif cfg_get("curve", "x"):
        dom_text = cfg_get("curve", "domain")
        if not dom_text:
            raise ConfigParseError("[curve] with expressions needs domain = a:b")
        parts = dom_text.split(":")
        if len(parts) != 2:
            raise ConfigParseError("[curve] domain must be a:b, got %r" % dom_text)
        curve = catalog.curve_from_expressions(
            cfg_get("curve", "x"), cfg_get("curve", "y", "0"), cfg_get("curve", "z", "0"),
            var=cfg_get("curve", "var", "t"),
            domain=(_const(parts[0]), _const(parts[1])),
            parametrization=cfg_get("curve", "parametrization", "general"))
    else:
        raise ConfigParseError("no curve given (flag --curve or [curve] section)")
    if curve.parametrization != "arc-length":
        curve = reparametrize_by_arclength(curve)

    theta_spec = args.theta or cfg_get("angle", "spec")
    if not theta_spec:
        raise ConfigParseError("no angle given (flag --theta or [angle] spec)")
    angle = make_angle(theta_spec, curve)

    s_range = parse_range(args.s_range or cfg_get("grid", "s")
                          or "%r:%r:100" % curve.domain, "s-range")
    u_range = parse_range(args.u_range or cfg_get("grid", "u") or "-1:1:20", "u-range")
    lo, hi = curve.domain
    if s_range[0] < lo - 1e-9 or s_range[1] > hi + 1e-9:
        raise ConfigParseError("s-range [%g, %g] exceeds curve domain [%g, %g]"
                               % (s_range[0], s_range[1], lo, hi))

    surface = OTSurface(curve=curve, angle=angle,
                        s_domain=(s_range[0], s_range[1]), u_domain=(u_range[0], u_range[1]))

    out_dir = Path(args.out or cfg_get("output", "dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)

    job = JobConfig(command=args.command, surface=surface, s_range=s_range,
                    u_range=u_range, out_dir=out_dir, tolerances=parse_tols(args.tol),
                    seed=args.seed if args.seed is not None else 0)
    if args.command == "oncurve":
        t_text = getattr(args, "t_range", None) or cfg_get("oncurve", "t") or "0:1:50"
        job.t_range = parse_range(t_text, "t-range")
        raw = {"s_range": s_range, "u_range": u_range, "t_range": job.t_range}
        spec = getattr(args, "curve_on_surface", None) or cfg_get("oncurve", "spec")
        s_items = {"s": cfg_get("oncurve", "s"), "u": cfg_get("oncurve", "u")}
        job.surface_curve = _parse_surface_curve(spec, s_items, raw)
        if job.surface_curve.kind in ("ruling", "s-parameter"):
            job.t_range = (job.surface_curve.domain[0], job.surface_curve.domain[1], job.t_range[2])
    return job


def _linspace(rng3):
    return np.linspace(rng3[0], rng3[1], rng3[2])


def run_sample(job):
    mesh = build_mesh(job.surface, job.s_range, job.u_range)
    obj_path, csv_path = export_mesh(mesh, job.out_dir / "mesh.obj")
    n_sing = int(mesh.mask.sum())
    print("wrote %s and %s (%d vertices, %d quads, %d singular)"
          % (obj_path, csv_path, len(mesh.vertices), len(mesh.faces), n_sing))
    return 0


def run_curvature_field(job):
    path = job.out_dir / "curvature.csv"
    skipped = 0
    with open(path, "w") as fh:
        fh.write("s,u,E,F,G,L,M,N,K,H,lambda1,lambda2\n")
        for s in _linspace(job.s_range):
            for u in _linspace(job.u_range):
                try:
                    cd = curvatures(job.surface, s, u)
                except SingularPoint:
                    skipped += 1
                    continue
                fh.write(",".join(_fmt(x) for x in (
                    s, u, cd.E, cd.F, cd.G, cd.L, cd.M, cd.N, cd.K, cd.H,
                    cd.lambda1, cd.lambda2)) + "\n")
    print("wrote %s (%d singular nodes skipped)" % (path, skipped))
    return 0


def run_singular(job):
    tol = job.tolerances.get("flat_tol", 1e-9)
    rep = singular_set(job.surface, flat_tol=tol)
    path = job.out_dir / "singular.txt"
    with open(path, "w") as fh:
        if rep.plane_mode:
            fh.write("plane mode: %s\n" % rep.note)
        fh.write("S (sin(theta) zeros, u = 0):\n")
        for p in rep.S:
            fh.write("  s = %s\n" % _fmt(p[0]))
        fh.write("Y (eta zeros, u = 0):\n")
        for p in rep.Y:
            fh.write("  s = %s\n" % _fmt(p[0]))
        fh.write("V = S union Y: %d points\n" % len(rep.V))
        for p in rep.V:
            amb = position(job.surface, p[0], p[1])
            fh.write("  s = %s  point = (%s, %s, %s)\n"
                     % (_fmt(p[0]), _fmt(amb[0]), _fmt(amb[1]), _fmt(amb[2])))
        if rep.coincident:
            fh.write("coincident S/Y parameters:\n")
            for p in rep.coincident:
                fh.write("  s = %s\n" % _fmt(p[0]))
    print(open(path).read().rstrip())
    print("wrote %s" % path)
    return 0


def run_striction(job):
    path = job.out_dir / "striction.csv"
    skipped = 0
    with open(path, "w") as fh:
        fh.write("s,x,y,z\n")
        for s in _linspace(job.s_range):
            try:
                c = striction_line(job.surface, s)
            except CylindricalDirection:
                skipped += 1
                continue
            fh.write("%s,%s,%s,%s\n" % (_fmt(s), _fmt(c[0]), _fmt(c[1]), _fmt(c[2])))
    msg = "wrote %s" % path
    if skipped:
        msg += " (%d cylindrical points skipped)" % skipped
    print(msg)
    return 0


def run_classify(job):
    tol_min = job.tolerances.get("tol_min", 1e-7)
    cls = classify_surface(job.surface, tol_min=tol_min)
    st = base_curve_status(job.surface)
    lines = ["surface:"]
    for name in ("is_plane", "is_tangent_mode", "is_normal_mode", "is_developable",
                 "is_cylindrical", "is_minimal", "is_helicoid"):
        lines.append("  %s: %s" % (name, getattr(cls, name)))
    lines.append("  max |tau| = %s, max |H| = %s" % (_fmt(cls.max_abs_tau), _fmt(cls.max_abs_H)))
    for note in cls.notes:
        lines.append("  note: %s" % note)
    lines.append("base curve:")
    for name in ("is_geodesic", "is_asymptotic", "is_line_of_curvature"):
        lines.append("  %s: %s" % (name, getattr(st, name)))
    text = "\n".join(lines) + "\n"
    path = job.out_dir / "classify.txt"
    path.write_text(text)
    print(text.rstrip())
    print("wrote %s" % path)
    return 0


def run_oncurve(job):
    path = job.out_dir / "oncurve.csv"
    tol = job.tolerances.get("tol_class", 1e-7)
    skipped = 0
    with open(path, "w") as fh:
        fh.write("t,s,u,k_n,kappa_g,tau_g\n")
        for t in _linspace(job.t_range):
            try:
                inv = oncurve.invariants_closed_form(job.surface, job.surface_curve, t)
                kg = oncurve.geodesic_curvature_exact(job.surface, job.surface_curve, t)
            except SingularPoint:
                skipped += 1
                continue
            fh.write("%s,%s,%s,%s,%s,%s\n" % (
                _fmt(t), _fmt(job.surface_curve.s_of_t(t)), _fmt(job.surface_curve.u_of_t(t)),
                _fmt(inv.k_n), _fmt(kg), _fmt(inv.tau_g)))
    cls = oncurve.classify_curve(job.surface, job.surface_curve,
                                 t_grid=_linspace(job.t_range), tol_class=tol)
    print("wrote %s (%d singular samples skipped)" % (path, skipped))
    print("asymptotic: %s  geodesic: %s  line of curvature: %s"
          % (cls.is_asymptotic, cls.is_geodesic, cls.is_line_of_curvature))
    return 0


def run_verify(job):
    rtol = job.tolerances.get("rtol", 1e-6)
    rep = verify.compare_closed_forms(job.surface, n_points=200, seed=job.seed, rtol=rtol)
    path = job.out_dir / "verify.csv"
    with open(path, "w") as fh:
        fh.write("s,u,quantity,closed_form,oracle,abs_err,rel_err\n")
        for r in rep.rows:
            fh.write("%s,%s,%s,%s,%s,%s,%s\n" % (
                _fmt(r.s), _fmt(r.u), r.quantity, _fmt(r.closed_form), _fmt(r.oracle),
                _fmt(r.abs_err), _fmt(r.rel_err)))
    worst = rep.worst()
    print("verified %d points; max abs err %.3e; worst %s at s=%.6g u=%.6g "
          "(abs %.3e, rel %.3e)"
          % (rep.n_points, rep.max_abs_err, worst.quantity, worst.s, worst.u,
             worst.abs_err, worst.rel_err))
    print("wrote %s" % path)
    if not rep.ok:
        bad = [r for r in rep.rows if not r.ok]
        print("TOLERANCE BREACH: %d rows exceed rtol %.1e" % (len(bad), rtol), file=sys.stderr)
        return 3
    return 0


_RUNNERS = {
    "sample": run_sample,
    "curvature-field": run_curvature_field,
    "singular": run_singular,
    "striction": run_striction,
    "classify": run_classify,
    "oncurve": run_oncurve,
    "verify": run_verify,
}


def run(job):
    return _RUNNERS[job.command](job)


def build_parser():
    parser = argparse.ArgumentParser(prog="otruled",
                                     description="Osculating-director ruled surface toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI config file")
    common.add_argument("--curve", help="catalog curve name")
    common.add_argument("--theta", help="angle spec: constant(c), linear(a), "
                                        "neg-integral-kappa, or expression in s")
    common.add_argument("--s-range", help="a:b:n grid over s")
    common.add_argument("--u-range", help="a:b:n grid over u")
    common.add_argument("--out", help="output directory")
    common.add_argument("--tol", action="append", metavar="NAME=VAL",
                        help="tolerance override (%s)" % ", ".join(_TOL_NAMES))
    common.add_argument("--seed", type=int, help="seed for randomized verification")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("sample", "curvature-field", "singular", "striction", "classify", "verify"):
        sub.add_parser(name, parents=[common])
    onc = sub.add_parser("oncurve", parents=[common])
    onc.add_argument("--curve-on-surface",
                     help="ruling(s0), param-s(u0), or linear(c1,c2,d1,d2)")
    onc.add_argument("--t-range", help="a:b:n samples of the curve parameter")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = build_job(args)
        return run(job)
    except ConfigParseError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return 1
    except OtruledError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
