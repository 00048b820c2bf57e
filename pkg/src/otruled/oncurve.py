"""Invariants of curves lying on an OT ruled surface.

A surface curve is (s(t), u(t)); invariants are evaluated after local
unit-speed normalization, so t never has to be an arc length parameter.
With v the ambient speed, the tangent coefficients are C = s'/v, D = u'/v,
and their arc derivatives follow in closed form from the first-form
coefficients, which keeps the whole evaluation free of nested differencing.

invariants_closed_form evaluates the classical display of (k_n, kappa_g,
tau_g) verbatim. The kappa_g display is not homogeneous in C (it drops a
factor C from two terms) and matches the definitional value only when C = 1;
geodesic_curvature_exact carries the corrected expression, which is what
classify_curve and the CLI use. invariants_oracle is an independent
finite-difference evaluation of the definitions for cross-checking both.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import numdiff
from .errors import NotUnitSpeed, SingularPoint
from .expressions import parse_scalar_function
from .surface import _curvature_data, _scalars, position

_H_CURVE = 1e-4


@dataclass(frozen=True)
class SurfaceCurve:
    """Parameter-plane curve t -> (s(t), u(t)) with optional analytic derivatives."""

    s_of_t: Callable
    u_of_t: Callable
    domain: tuple
    ds_dt: Optional[Callable] = None
    du_dt: Optional[Callable] = None
    d2s_dt2: Optional[Callable] = None
    d2u_dt2: Optional[Callable] = None
    kind: str = "general"


@dataclass(frozen=True)
class CurveInvariants:
    k_n: float
    kappa_g: float
    tau_g: float
    is_asymptotic: Optional[bool] = None
    is_geodesic: Optional[bool] = None
    is_line_of_curvature: Optional[bool] = None


def ruling_curve(s0, u_range=(-1.0, 1.0)):
    s0 = float(s0)
    return SurfaceCurve(s_of_t=lambda t: s0, u_of_t=lambda t: float(t), domain=u_range,
                        ds_dt=lambda t: 0.0, du_dt=lambda t: 1.0,
                        d2s_dt2=lambda t: 0.0, d2u_dt2=lambda t: 0.0, kind="ruling")


def s_parameter_curve(u0, s_range):
    u0 = float(u0)
    return SurfaceCurve(s_of_t=lambda t: float(t), u_of_t=lambda t: u0, domain=s_range,
                        ds_dt=lambda t: 1.0, du_dt=lambda t: 0.0,
                        d2s_dt2=lambda t: 0.0, d2u_dt2=lambda t: 0.0, kind="s-parameter")


def linear_curve(c1, c2, d1, d2, t_range):
    c1, c2, d1, d2 = map(float, (c1, c2, d1, d2))
    return SurfaceCurve(s_of_t=lambda t: c1 * t + c2, u_of_t=lambda t: d1 * t + d2,
                        domain=t_range, ds_dt=lambda t: c1, du_dt=lambda t: d1,
                        d2s_dt2=lambda t: 0.0, d2u_dt2=lambda t: 0.0, kind="linear")


def curve_from_t_expressions(s_expr, u_expr, t_range):
    fs = parse_scalar_function(s_expr, var="t")
    fu = parse_scalar_function(u_expr, var="t")
    return SurfaceCurve(s_of_t=lambda t: float(fs[0](t)), u_of_t=lambda t: float(fu[0](t)),
                        domain=t_range,
                        ds_dt=lambda t: float(fs[1](t)), du_dt=lambda t: float(fu[1](t)),
                        d2s_dt2=lambda t: float(fs[2](t)), d2u_dt2=lambda t: float(fu[2](t)),
                        kind="general")


def _curve_derivs(curve, t):
    sd = curve.ds_dt(t) if curve.ds_dt else float(numdiff.d1(curve.s_of_t, t, _H_CURVE))
    ud = curve.du_dt(t) if curve.du_dt else float(numdiff.d1(curve.u_of_t, t, _H_CURVE))
    sdd = curve.d2s_dt2(t) if curve.d2s_dt2 else float(numdiff.d2(curve.s_of_t, t))
    udd = curve.d2u_dt2(t) if curve.d2u_dt2 else float(numdiff.d2(curve.u_of_t, t))
    return sd, ud, sdd, udd


def unit_speed_coefficients(surface, curve, t):
    """Scalars bundle plus (C, D, Cdot, Ddot, v) at t, normalized to unit speed.

    Cdot, Ddot are derivatives with respect to the arc length of the surface
    curve, obtained from the closed form of dv/dt through the first-form
    coefficient derivatives E_s, E_u, F_s.
    """
    s = float(curve.s_of_t(t))
    u = float(curve.u_of_t(t))
    sd, ud, sdd, udd = _curve_derivs(curve, t)
    d = _scalars(surface, s, u)
    E = d.P + d.cth**2
    F = d.cth
    v2 = E * sd * sd + 2.0 * F * sd * ud + ud * ud
    if v2 <= 1e-24:
        raise NotUnitSpeed("curve velocity vanishes at t = %g" % t)
    v = math.sqrt(v2)
    P_s = 2.0 * (d.f * d.f_s + d.g * d.g_s)
    E_s = P_s - 2.0 * d.cth * d.sth * d.thp
    E_u = 2.0 * (-d.f * d.eta + d.g * d.mu)
    F_s = -d.sth * d.thp
    vdot = (E_s * sd**3 + E_u * sd**2 * ud + 2.0 * F_s * sd**2 * ud
            + 2.0 * E * sd * sdd + 2.0 * F * (sdd * ud + sd * udd)
            + 2.0 * ud * udd) / (2.0 * v)
    C = sd / v
    D = ud / v
    Cdot = (sdd * v - sd * vdot) / v**3
    Ddot = (udd * v - ud * vdot) / v**3
    constraint = (C * d.cth + D) ** 2 + C * C * d.P - 1.0
    if abs(constraint) > 1e-6:
        raise NotUnitSpeed("unit speed constraint off by %g at t = %g" % (constraint, t))
    return d, C, D, Cdot, Ddot, v


def invariants_closed_form(surface, curve, t):
    """(k_n, kappa_g, tau_g) in closed form.

    The kappa_g returned here is the compact variant that drops a factor of
    C; it equals the definitional geodesic curvature only where C = 1 (see
    geodesic_curvature_exact).
    """
    d, C, D, Cd, Dd, _ = unit_speed_coefficients(surface, curve, t)
    cd = _curvature_data(d)
    A1, A2, B1, B2 = cd.A1, cd.A2, cd.B1, cd.B2
    P = d.P
    kn = C * ((C * d.cth + D) * (A1 * d.cth + A2) + (C * A1 + D * B1) * P)
    tg = math.sqrt(P) * (C * (C * A2 + D * B2) - D * (C * A1 + D * B1))
    P_s = 2.0 * (d.f * d.f_s + d.g * d.g_s)
    Q = d.eta * d.f - d.mu * d.g
    T1 = C * d.cth + D
    kg = (T1 * (-P * Cd + C * Q * (2.0 * D + d.cth) - 0.5 * C * P_s)
          + C * d.g * (Cd * d.g * d.cth - C * d.g * d.thp * d.sth
                       - d.mu * C * d.g**2 + d.f * C * d.eta * d.g + Dd * d.g)
          + C * d.f * (Cd * d.f * d.cth - C * d.f * d.thp * d.sth
                       - d.mu * d.f * d.g * C + C * d.f**2 * d.eta + Dd * d.f)
          ) / math.sqrt(P)
    return CurveInvariants(k_n=kn, kappa_g=kg, tau_g=tg)


def geodesic_curvature_exact(surface, curve, t):
    """Definitional geodesic curvature <beta'', U x beta'> in closed form.

    Rederived from the surface jet; restores the factor of C that
    invariants_closed_form drops, and agrees with invariants_oracle on
    general curves.
    """
    d, C, D, Cd, Dd, _ = unit_speed_coefficients(surface, curve, t)
    if d.P <= 1e-16:
        raise SingularPoint("singular point on curve at t = %g" % t)
    P = d.P
    P_s = 2.0 * (d.f * d.f_s + d.g * d.g_s)
    Q = d.eta * d.f - d.mu * d.g
    T1 = C * d.cth + D
    return (P * (Dd * C - Cd * D)
            + C**3 * P * Q - C**3 * P * d.thp * d.sth - C**2 * T1 * P_s / 2.0
            + C**2 * T1 * Q * d.cth + 2.0 * C * D * T1 * Q) / math.sqrt(P)


def invariants_oracle(surface, curve, t, h=_H_CURVE):
    """Finite-difference evaluation of the invariant definitions.

    Differentiates the ambient curve and the normal along it; independent of
    every closed form above except the surface position map.
    """

    def beta(x):
        return position(surface, curve.s_of_t(x), curve.u_of_t(x))

    b1 = numdiff.d1(beta, t)
    b2 = numdiff.d2(beta, t)

    def normal(x):
        ss, uu = curve.s_of_t(x), curve.u_of_t(x)
        ps = numdiff.d1(lambda y: position(surface, y, uu), ss, h)
        pu = numdiff.d1(lambda y: position(surface, ss, y), uu, h)
        cr = np.cross(ps, pu)
        nn = np.linalg.norm(cr)
        if nn <= 1e-12:
            raise SingularPoint("normal undefined on curve at t = %g" % x)
        return cr / nn

    U = normal(t)
    Ud = numdiff.d1(normal, t, h)
    sp2 = float(b1 @ b1)
    kn = float(b2 @ U) / sp2
    kg = float(b2 @ np.cross(U, b1)) / sp2**1.5
    tg = -float(Ud @ np.cross(U, b1)) / sp2
    return CurveInvariants(k_n=kn, kappa_g=kg, tau_g=tg)


def case_invariants(surface, curve, t):
    """Specialized invariant forms for the recognized configurations.

    Covers rulings, u = const parameter curves, and tangent / normal director
    surfaces (theta = 0 resp. pi/2); kappa_g is nan where the specialized
    display inherits the C-homogeneity defect. Returns None when no
    specialization applies at this point.
    """
    d, C, D, Cd, Dd, _ = unit_speed_coefficients(surface, curve, t)
    P, W = d.P, d.W
    if curve.kind == "ruling":
        return CurveInvariants(k_n=0.0, kappa_g=0.0, tau_g=-D * D * d.mu * d.sth / P)
    if curve.kind == "s-parameter":
        kn = C * C / math.sqrt(P) * ((d.f * d.mu + d.g * d.eta) * d.cth - W - P * d.xi)
        tg = C * C / P * (P * (d.f * d.mu + d.g * d.eta + d.xi * d.cth) + W * d.cth)
        return CurveInvariants(k_n=kn, kappa_g=math.nan, tau_g=tg)
    if abs(d.sth) <= 1e-12 and d.cth > 0.0:  # tangent director, theta = 0 branch
        u = d.u
        kn = C * C * u * d.kappa * d.tau
        tg = C * d.tau * (C + D)
        return CurveInvariants(k_n=kn, kappa_g=math.nan, tau_g=tg)
    if abs(d.cth) <= 1e-12 and d.sth > 0.0:  # normal director, theta = pi/2 branch
        u = d.u
        Z = u * d.kappa_p * d.tau + (1.0 - u * d.kappa) * d.tau_p
        kn = C * (C * u * Z + 2.0 * D * d.tau) / math.sqrt(P)
        tg = C * C * d.tau - D * (C * u * Z + D * d.tau) / P
        return CurveInvariants(k_n=kn, kappa_g=math.nan, tau_g=tg)
    return None


def principal_ratio(surface, curve, t):
    """(C A1 + D B1) / (C A2 + D B2); constant along a linear line of curvature."""
    d, C, D, _, _, _ = unit_speed_coefficients(surface, curve, t)
    cd = _curvature_data(d)
    den = C * cd.A2 + D * cd.B2
    if abs(den) <= 1e-300:
        return math.inf
    return (C * cd.A1 + D * cd.B1) / den


def classify_curve(surface, curve, t_grid=None, n=50, tol_class=1e-7):
    """Asymptotic / geodesic / line of curvature flags from sampled invariants.

    k_n and tau_g come from the closed forms, kappa_g from the exact derived
    expression. The returned invariant fields hold the maximum absolute
    sampled values. Samples at singular points are skipped.
    """
    if t_grid is None:
        lo, hi = curve.domain
        pad = 1e-6 * (hi - lo)
        t_grid = np.linspace(lo + pad, hi - pad, n)
    kns, kgs, tgs = [], [], []
    for t in t_grid:
        try:
            inv = invariants_closed_form(surface, curve, t)
            kg = geodesic_curvature_exact(surface, curve, t)
        except SingularPoint:
            continue
        kns.append(abs(inv.k_n))
        kgs.append(abs(kg))
        tgs.append(abs(inv.tau_g))
        if curve.kind in ("ruling", "s-parameter"):
            spec = case_invariants(surface, curve, t)
            scale = max(1.0, abs(inv.k_n), abs(inv.tau_g))
            if (abs(spec.k_n - inv.k_n) > 1e-8 * scale
                    or abs(spec.tau_g - inv.tau_g) > 1e-8 * scale):
                warnings.warn("specialized forms disagree with general at t = %g" % t)
    if not kns:
        raise SingularPoint("no regular sample on the curve")
    return CurveInvariants(k_n=max(kns), kappa_g=max(kgs), tau_g=max(tgs),
                           is_asymptotic=max(kns) <= tol_class,
                           is_geodesic=max(kgs) <= tol_class,
                           is_line_of_curvature=max(tgs) <= tol_class)
