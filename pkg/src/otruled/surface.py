"""Ruled surfaces phi(s, u) = alpha(s) + u q_o(s) over an osculating director.

All closed forms live in the scalar bundle computed by _scalars: with
f = sin(theta) - u eta and g = u mu,

    phi_s = cos(theta) q_o + g B + f r,      phi_u = q_o,
    phi_s x phi_u = f B - g r,               |phi_s x phi_u|^2 = f^2 + g^2.

P = f^2 + g^2 and W = f_s g - f g_s appear throughout; W is the expanded,
everywhere-defined form of the quotient-derivative combination that the
curvature formulas need (it equals g^2 (f/g)_s wherever g != 0).
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .curves import frenet
from .errors import CurvatureVanishes, CylindricalDirection, SingularPoint

EPS_SING = 1e-8
EPS_REG = 1e-9


@dataclass
class OTSurface:
    """An osculating-director ruled surface over an arc length base curve."""

    curve: object
    angle: object
    s_domain: Optional[tuple] = None
    u_domain: tuple = (-1.0, 1.0)

    def __post_init__(self):
        if self.curve.parametrization != "arc-length":
            raise ValueError("base curve must be arc length parametrized; "
                             "run reparametrize_by_arclength first")
        if self.s_domain is None:
            self.s_domain = tuple(self.curve.domain)


class _Scalars:
    """Everything pointwise the closed forms need, computed once."""

    __slots__ = ("s", "u", "th", "sth", "cth", "thp", "thpp", "kappa", "tau",
                 "kappa_p", "tau_p", "eta", "mu", "xi", "eta_p", "mu_p",
                 "f", "g", "f_s", "g_s", "P", "W", "alpha", "T", "N", "B", "q", "r")


def _scalars(surface, s, u):
    fr = frenet(surface.curve, s)
    d = _Scalars()
    d.s, d.u = float(s), float(u)
    d.th = float(surface.angle.theta(s))
    d.thp = float(surface.angle.theta_prime(s))
    d.thpp = float(surface.angle.theta_double_prime(s))
    d.sth, d.cth = np.sin(d.th), np.cos(d.th)
    d.kappa, d.tau = fr.kappa, fr.tau
    d.kappa_p, d.tau_p = fr.kappa_prime, fr.tau_prime
    d.eta = d.thp + d.kappa
    d.mu = d.tau * d.sth
    d.xi = d.tau * d.cth
    d.eta_p = d.thpp + d.kappa_p
    d.mu_p = d.tau_p * d.sth + d.tau * d.thp * d.cth
    d.f = d.sth - u * d.eta
    d.g = u * d.mu
    d.f_s = d.thp * d.cth - u * d.eta_p
    d.g_s = u * d.mu_p
    d.P = d.f * d.f + d.g * d.g
    d.W = d.f_s * d.g - d.f * d.g_s
    d.alpha = np.asarray(surface.curve.position(s), dtype=float)
    d.T, d.N, d.B = fr.T, fr.N, fr.B
    d.q = d.cth * fr.T + d.sth * fr.N
    d.r = d.sth * fr.T - d.cth * fr.N
    return d


@dataclass(frozen=True)
class SurfaceJet:
    s: float
    u: float
    point: np.ndarray
    phi_s: np.ndarray
    phi_u: np.ndarray
    phi_ss: np.ndarray
    phi_su: np.ndarray
    phi_uu: np.ndarray
    f: float
    g: float
    U: np.ndarray


@dataclass(frozen=True)
class CurvatureData:
    """Fundamental forms, curvatures and the shape operator at one point.

    The shape operator acts on tangent coefficients (C, D) of
    C phi_s + D phi_u as the matrix [[A1, B1], [A2, B2]]; dir1/dir2 are
    principal directions in those coefficients, normalized to unit length in
    the first fundamental form, with lambda1 >= lambda2.
    """

    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    K: float
    H: float
    A1: float
    A2: float
    B1: float
    B2: float
    lambda1: float
    lambda2: float
    dir1: np.ndarray
    dir2: np.ndarray
    k_dir_ratio: float
    m_dir_ratio: float


def position(surface, s, u):
    """Ambient point phi(s, u); defined at singular parameters too."""
    d = _scalars(surface, s, u)
    return d.alpha + u * d.q


def jet(surface, s, u):
    """First and second partial derivatives plus the unit normal at (s, u)."""
    d = _scalars(surface, s, u)
    if d.P <= EPS_SING**2:
        raise SingularPoint("phi_s x phi_u vanishes at (s, u) = (%g, %g)" % (s, u))
    phi_s = d.cth * d.q + d.g * d.B + d.f * d.r
    phi_ss = ((d.f * d.eta - d.g * d.mu - d.thp * d.sth) * d.q
              + (d.mu * d.cth + d.g_s - d.f * d.xi) * d.B
              + (d.f_s + d.g * d.xi - d.eta * d.cth) * d.r)
    U = (d.f * d.B - d.g * d.r) / np.sqrt(d.P)
    return SurfaceJet(s=d.s, u=d.u, point=d.alpha + u * d.q, phi_s=phi_s, phi_u=d.q,
                      phi_ss=phi_ss, phi_su=d.mu * d.B - d.eta * d.r,
                      phi_uu=np.zeros(3), f=d.f, g=d.g, U=U)


def gauss_map(jet_data):
    """Unit normal from a jet; identical to normalized phi_s x phi_u."""
    return jet_data.U


def _principal_direction(lam, A1, A2, B1, B2, E, F):
    v_a = np.array([B1, lam - A1])
    v_b = np.array([lam - B2, A2])
    v = v_a if np.linalg.norm(v_a) >= np.linalg.norm(v_b) else v_b
    scale = max(abs(A1), abs(A2), abs(B1), abs(B2), abs(lam), 1.0)
    if np.linalg.norm(v) <= 1e-14 * scale:
        # operator is diagonal here; eigenvectors are the coordinate directions
        v = np.array([1.0, 0.0]) if abs(lam - A1) <= abs(lam - B2) else np.array([0.0, 1.0])
    nrm = np.sqrt(E * v[0] ** 2 + 2.0 * F * v[0] * v[1] + v[1] ** 2)
    return v / nrm


def _curvature_data(d):
    if d.P <= EPS_SING**2:
        raise SingularPoint("first form degenerate at (s, u) = (%g, %g)" % (d.s, d.u))
    P, W = d.P, d.W
    rootP = np.sqrt(P)
    E = P + d.cth**2
    F = d.cth
    G = 1.0
    L = (-P * d.xi + d.mu * d.sth * d.cth - W) / rootP
    M = d.mu * d.sth / rootP
    Nc = 0.0
    K = -(d.mu * d.sth) ** 2 / P**2
    H = -(P * d.xi + d.mu * d.sth * d.cth + W) / (2.0 * P * rootP)
    A1 = -(W + P * d.xi) / (P * rootP)
    A2 = (P * (d.f * d.mu + d.g * d.eta + d.xi * d.cth) + W * d.cth) / (P * rootP)
    B1 = d.mu * d.sth / (P * rootP)
    B2 = -d.mu * d.cth * d.sth / (P * rootP)
    disc = (A1 - B2) ** 2 + 4.0 * A2 * B1
    if disc < -1e-12:
        raise ValueError("principal curvature discriminant %g < 0 at (%g, %g)" % (disc, d.s, d.u))
    root = np.sqrt(max(disc, 0.0))
    lam1 = 0.5 * ((A1 + B2) + root)
    lam2 = 0.5 * ((A1 + B2) - root)
    dir1 = _principal_direction(lam1, A1, A2, B1, B2, E, F)
    dir2 = _principal_direction(lam2, A1, A2, B1, B2, E, F)
    with np.errstate(divide="ignore"):
        k_ratio = float(np.float64(dir1[1]) / np.float64(dir1[0]))
        m_ratio = float(np.float64(dir2[1]) / np.float64(dir2[0]))
    return CurvatureData(E=E, F=F, G=G, L=L, M=M, N=Nc, K=K, H=H,
                         A1=A1, A2=A2, B1=B1, B2=B2, lambda1=lam1, lambda2=lam2,
                         dir1=dir1, dir2=dir2, k_dir_ratio=k_ratio, m_dir_ratio=m_ratio)


def fundamental_forms(surface, s, u):
    """First and second fundamental form coefficients (full CurvatureData)."""
    return _curvature_data(_scalars(surface, s, u))


def curvatures(surface, s, u):
    """Gaussian and mean curvature plus principal curvatures at (s, u)."""
    return _curvature_data(_scalars(surface, s, u))


def weingarten(surface, s, u):
    """Shape operator entries and principal directions at (s, u)."""
    return _curvature_data(_scalars(surface, s, u))


@dataclass
class SingularReport:
    """Singular parameter pairs on the base line u = 0.

    S collects zeros of sin(theta), Y zeros of eta; both families sit at
    u = 0 and V is their union. plane_mode marks torsion-free surfaces,
    where the parametrization degenerates along the whole fold curve
    u = sin(theta)/eta and a pointwise enumeration does not apply; S and Y
    are then left empty.
    """

    S: list
    Y: list
    V: list
    coincident: list
    plane_mode: bool = False
    note: str = ""


def _grid_roots(fun, lo, hi, n, xtol=1e-12, flat_tol=1e-9):
    xs = np.linspace(lo, hi, n + 1)
    vals = np.array([fun(x) for x in xs])
    roots = []
    if abs(vals[0]) <= flat_tol:
        roots.append(lo)
    if abs(vals[-1]) <= flat_tol:
        roots.append(hi)
    for i in range(n):
        a, b = vals[i], vals[i + 1]
        if a == 0.0 and xs[i] not in roots:
            roots.append(xs[i])
        elif a * b < 0.0:
            roots.append(float(brentq(fun, xs[i], xs[i + 1], xtol=xtol)))
    # tangential zeros: local minima of |fun| that dip to ~0 without a sign change
    absv = np.abs(vals)
    for i in range(1, n):
        if absv[i] <= absv[i - 1] and absv[i] <= absv[i + 1] and absv[i] <= 1e-3:
            if vals[i - 1] * vals[i + 1] > 0.0:
                res = minimize_scalar(lambda x: fun(x) ** 2, bounds=(xs[i - 1], xs[i + 1]),
                                      method="bounded", options={"xatol": 1e-12})
                if res.fun <= flat_tol**2:
                    roots.append(float(res.x))
    roots.sort()
    merged = []
    for rt in roots:
        if not merged or abs(rt - merged[-1]) > 1e-9:
            merged.append(rt)
    return merged


def singular_set(surface, n_grid=2048, flat_tol=1e-9):
    """Locate singular parameters: zeros of sin(theta) and of eta at u = 0.

    Zeros are bracketed on an n_grid scan of the s domain and refined by
    bisection; tangential (double) zeros are picked up by minimizing the
    square near flat local minima of the scan.
    """
    lo, hi = surface.s_domain
    taus = []
    for s in np.linspace(lo, hi, 257):
        try:
            taus.append(abs(frenet(surface.curve, s).tau))
        except CurvatureVanishes:
            continue
    if taus and max(taus) <= 1e-8:
        return SingularReport(S=[], Y=[], V=[], coincident=[], plane_mode=True,
                              note="torsion-free base: surface is a plane and the "
                                   "parametrization folds along u = sin(theta)/eta; "
                                   "no isolated singular parameters reported")

    def fsin(x):
        return float(np.sin(surface.angle.theta(x)))

    def feta(x):
        return float(surface.angle.theta_prime(x) + frenet(surface.curve, x).kappa)

    S = [(rt, 0.0) for rt in _grid_roots(fsin, lo, hi, n_grid, flat_tol=flat_tol)]
    Y = [(rt, 0.0) for rt in _grid_roots(feta, lo, hi, n_grid, flat_tol=flat_tol)]
    V = sorted(set(S) | set(Y))
    coincident = [p for p in S for q in Y if abs(p[0] - q[0]) <= 1e-9]
    return SingularReport(S=S, Y=Y, V=V, coincident=coincident)


def striction_line(surface, s):
    """Point of the striction line on the ruling through s.

    Raises CylindricalDirection where the director derivative vanishes.
    """
    d = _scalars(surface, s, 0.0)
    denom = d.eta**2 + d.mu**2
    if denom <= EPS_REG**2:
        raise CylindricalDirection("director is locally constant at s = %g" % s)
    return d.alpha + (d.eta * d.sth / denom) * d.q


@dataclass
class SurfaceClassification:
    is_plane: bool
    is_tangent_mode: bool
    is_normal_mode: bool
    is_developable: bool
    is_cylindrical: bool
    is_minimal: bool
    is_helicoid: bool
    max_abs_tau: float
    max_abs_H: float
    notes: list = field(default_factory=list)


def classify_surface(surface, n_s=64, n_u=16, tol=1e-8, tol_min=1e-7):
    """Sampled classification flags for the surface.

    Minimality is judged on a regular-point grid with |H| <= tol_min; the
    other flags test the pointwise identities that characterize each class.
    """
    lo, hi = surface.s_domain
    ulo, uhi = surface.u_domain
    taus, sths, cths, dev, qp2 = [], [], [], [], []
    habs, wabs = [], []
    for s in np.linspace(lo, hi, n_s):
        try:
            d0 = _scalars(surface, s, 0.0)
        except CurvatureVanishes:
            continue
        taus.append(abs(d0.tau))
        sths.append(abs(d0.sth))
        cths.append(abs(d0.cth))
        dev.append(abs(d0.mu * d0.sth))
        qp2.append(d0.eta**2 + d0.mu**2)
        for u in np.linspace(ulo, uhi, n_u):
            try:
                d = _scalars(surface, s, u)
                cd = _curvature_data(d)
            except SingularPoint:
                continue
            habs.append(abs(cd.H))
            wabs.append(abs(d.W))
    if not taus:
        raise CurvatureVanishes("no sample of the base curve has a Frenet frame")
    is_plane = max(taus) <= tol
    is_tangent = max(sths) <= tol
    is_normal = max(cths) <= tol
    is_developable = max(dev) <= tol
    is_cyl = max(qp2) <= tol**2
    is_minimal = bool(habs) and max(habs) <= tol_min
    notes = []
    if is_plane and not is_cyl:
        notes.append("plane surface; the angle theta = -integral(kappa) would make "
                     "the director constant (cylindrical)")
    if is_normal and wabs:
        notes.append("normal-director minimality residual max|W| = %.3e" % max(wabs))
    return SurfaceClassification(is_plane=is_plane, is_tangent_mode=is_tangent,
                                 is_normal_mode=is_normal, is_developable=is_developable,
                                 is_cylindrical=is_cyl, is_minimal=is_minimal,
                                 is_helicoid=is_minimal and not is_plane,
                                 max_abs_tau=max(taus),
                                 max_abs_H=max(habs) if habs else float("nan"),
                                 notes=notes)


@dataclass
class BaseCurveStatus:
    is_geodesic: bool
    is_asymptotic: bool
    is_line_of_curvature: bool
    max_abs_kappa: float
    max_abs_tau: float
    max_abs_asymptotic_factor: float
    n_skipped: int = 0


def base_curve_status(surface, n=128, tol=1e-8):
    """Geodesic / asymptotic / line-of-curvature tests for the base curve u = 0.

    The asymptotic test evaluates kappa tau sin(theta) cos(theta), the factor
    of the normal projection of alpha'' that survives for u near 0.
    """
    lo, hi = surface.s_domain
    kaps, taus, fac = [], [], []
    skipped = 0
    for s in np.linspace(lo, hi, n):
        try:
            d = _scalars(surface, s, 0.0)
        except CurvatureVanishes:
            skipped += 1
            kaps.append(0.0)
            taus.append(0.0)
            fac.append(0.0)
            continue
        kaps.append(abs(d.kappa))
        taus.append(abs(d.tau))
        fac.append(abs(d.kappa * d.tau * d.sth * d.cth))
    return BaseCurveStatus(is_geodesic=max(kaps) <= tol,
                           is_asymptotic=max(fac) <= tol,
                           is_line_of_curvature=max(taus) <= tol,
                           max_abs_kappa=max(kaps), max_abs_tau=max(taus),
                           max_abs_asymptotic_factor=max(fac), n_skipped=skipped)
