"""Space curves: Frenet apparatus, helix classification, arc length reparametrization.

A curve is described by a CurveSpec. Analytic derivatives and frame/scalar
overrides are optional; anything missing is filled in by finite differences.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from . import numdiff
from .errors import CurvatureVanishes, InsufficientSamples, OutOfDomain

EPS_REG = 1e-9
DOMAIN_SLACK = 1e-9


@dataclass(frozen=True)
class CurveSpec:
    """A parametrized space curve on a closed interval.

    parametrization is "arc-length" or "general". d1..d3 are optional analytic
    derivatives with respect to the curve's own parameter. frenet_fn, when given,
    fully overrides the frame computation (used for curves with a preferred
    smooth signed frame); scalars_fn overrides only (kappa, tau, kappa', tau').
    s_of_t / t_of_s carry the parameter maps when the curve came out of an
    arc length reparametrization.
    """

    name: str
    position: Callable
    domain: tuple
    parametrization: str = "arc-length"
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    d3: Optional[Callable] = None
    frenet_fn: Optional[Callable] = None
    scalars_fn: Optional[Callable] = None
    s_of_t: Optional[Callable] = None
    t_of_s: Optional[Callable] = None


@dataclass(frozen=True)
class FrenetData:
    """Frenet frame and curvature scalars at one parameter value.

    kappa_prime and tau_prime are derivatives with respect to the curve's
    parameter. The generic computation returns kappa >= 0; curves with a
    frenet_fn or scalars_fn override may carry a smooth signed convention
    instead, in which case the frame stays smooth across kappa = 0.
    """

    s: float
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float
    kappa_prime: float
    tau_prime: float


@dataclass
class HelixReport:
    """Sampled helix diagnostics over a curve's domain.

    max_deviation is the normalized spread of the slant function sigma,
    max|sigma - mean| / max(1, |mean|). Samples where the Frenet frame is
    undefined are skipped and listed in skipped_params.
    """

    is_plane_curve: bool
    is_general_helix: bool
    is_slant_helix: bool
    rho_values: np.ndarray
    sigma_values: np.ndarray
    max_deviation: float
    skipped_params: np.ndarray = field(default_factory=lambda: np.empty(0))


def check_domain(curve, s):
    lo, hi = curve.domain
    if s < lo - DOMAIN_SLACK or s > hi + DOMAIN_SLACK:
        raise OutOfDomain("parameter %r outside domain [%g, %g] of curve %s" % (s, lo, hi, curve.name))


def derivative(curve, s, order):
    """Derivative of the position of given order (1, 2 or 3), analytic if available."""
    check_domain(curve, s)
    fn = (curve.d1, curve.d2, curve.d3)[order - 1]
    if fn is not None:
        return np.asarray(fn(s), dtype=float)
    fd = (numdiff.d1, numdiff.d2, numdiff.d3)[order - 1]
    return fd(curve.position, s)


def _frenet_arclength(curve, s):
    a1 = derivative(curve, s, 1)
    a2 = derivative(curve, s, 2)
    a3 = derivative(curve, s, 3)
    kappa = float(np.linalg.norm(a2))
    if kappa <= EPS_REG:
        raise CurvatureVanishes("kappa = %g at s = %g on curve %s" % (kappa, s, curve.name))
    T = a1 / np.linalg.norm(a1)
    N = a2 / kappa
    B = np.cross(T, N)
    tau = float(np.dot(np.cross(a1, a2), a3)) / kappa**2
    kappa_prime = float(np.dot(a2, a3)) / kappa

    def tau_at(x):
        b1 = derivative(curve, x, 1)
        b2 = derivative(curve, x, 2)
        b3 = derivative(curve, x, 3)
        return np.dot(np.cross(b1, b2), b3) / np.dot(b2, b2)

    lo, hi = curve.domain
    tau_prime = float(numdiff.d1_bounded(tau_at, s, lo, hi))
    return T, N, B, kappa, tau, kappa_prime, tau_prime


def _frenet_general(curve, s):
    a1 = derivative(curve, s, 1)
    a2 = derivative(curve, s, 2)
    a3 = derivative(curve, s, 3)
    v = float(np.linalg.norm(a1))
    if v <= EPS_REG:
        raise ValueError("curve %s not regular at s = %g" % (curve.name, s))
    cr = np.cross(a1, a2)
    crn = float(np.linalg.norm(cr))
    kappa = crn / v**3
    if kappa <= EPS_REG:
        raise CurvatureVanishes("kappa = %g at s = %g on curve %s" % (kappa, s, curve.name))
    T = a1 / v
    B = cr / crn
    N = np.cross(B, T)
    tau = float(np.dot(cr, a3)) / crn**2

    def kappa_at(x):
        b1 = derivative(curve, x, 1)
        b2 = derivative(curve, x, 2)
        return np.linalg.norm(np.cross(b1, b2)) / np.linalg.norm(b1) ** 3

    def tau_at(x):
        b1 = derivative(curve, x, 1)
        b2 = derivative(curve, x, 2)
        b3 = derivative(curve, x, 3)
        c = np.cross(b1, b2)
        return np.dot(c, b3) / np.dot(c, c)

    lo, hi = curve.domain
    kappa_prime = float(numdiff.d1_bounded(kappa_at, s, lo, hi))
    tau_prime = float(numdiff.d1_bounded(tau_at, s, lo, hi))
    return T, N, B, kappa, tau, kappa_prime, tau_prime


def frenet(curve, s):
    """Frenet frame and scalars of the curve at parameter s.

    Raises CurvatureVanishes where the frame is undefined, OutOfDomain for
    parameters outside the declared interval.
    """
    check_domain(curve, s)
    if curve.frenet_fn is not None:
        return curve.frenet_fn(s)
    if curve.parametrization == "arc-length":
        T, N, B, kappa, tau, kp, tp = _frenet_arclength(curve, s)
    else:
        T, N, B, kappa, tau, kp, tp = _frenet_general(curve, s)
    if curve.scalars_fn is not None:
        kappa, tau, kp, tp = curve.scalars_fn(s)
        if abs(kappa) <= EPS_REG:
            raise CurvatureVanishes("kappa = %g at s = %g on curve %s" % (kappa, s, curve.name))
        # keep the frame consistent with a signed kappa override
        if kappa < 0.0:
            N = -N
            B = -B
    return FrenetData(s=float(s), T=T, N=N, B=B, kappa=float(kappa), tau=float(tau),
                      kappa_prime=float(kp), tau_prime=float(tp))


def slant_function(kappa, tau, kappa_prime, tau_prime):
    """Slant helix function sigma; constant iff the curve is a slant helix."""
    return (tau_prime * kappa - tau * kappa_prime) / (kappa**2 + tau**2) ** 1.5


def _constancy(values, tol):
    mean = float(np.mean(values))
    dev = float(np.max(np.abs(values - mean)))
    scale = max(1.0, abs(mean))
    return dev / scale <= tol, dev / scale


def classify_helix(curve, samples=None, n=200, tol_helix=1e-6):
    """Classify the curve as plane / general helix / slant helix from samples.

    Points where the Frenet frame is undefined are skipped and reported.
    Raises InsufficientSamples when fewer than 8 samples survive.
    """
    if samples is None:
        lo, hi = curve.domain
        samples = np.linspace(lo, hi, n)
    rho, sigma, taus, kept, skipped = [], [], [], [], []
    for s in samples:
        try:
            fr = frenet(curve, s)
        except CurvatureVanishes:
            skipped.append(s)
            continue
        rho.append(fr.tau / fr.kappa)
        sigma.append(slant_function(fr.kappa, fr.tau, fr.kappa_prime, fr.tau_prime))
        taus.append(fr.tau)
        kept.append(s)
    if len(kept) < 8:
        raise InsufficientSamples("only %d of %d samples have a Frenet frame" % (len(kept), len(samples)))
    rho = np.asarray(rho)
    sigma = np.asarray(sigma)
    is_plane = bool(np.max(np.abs(taus)) <= tol_helix)
    is_general, _ = _constancy(rho, tol_helix)
    is_slant, dev = _constancy(sigma, tol_helix)
    return HelixReport(is_plane_curve=is_plane, is_general_helix=is_general,
                       is_slant_helix=is_slant, rho_values=rho, sigma_values=sigma,
                       max_deviation=dev, skipped_params=np.asarray(skipped))


def reparametrize_by_arclength(curve, n_nodes=800, quad_tol=1e-13):
    """Rebuild a general-parametrization curve as an arc length CurveSpec.

    Segment lengths come from adaptive quadrature of the speed; the parameter
    map is inverted per query by Newton refinement of the exact arc length
    residual from the nearest node, so positions are accurate to quad_tol.
    Derivatives of the new curve follow from the chain rule, which makes the
    reported speed exactly 1 regardless of inversion error.
    """
    if curve.parametrization == "arc-length":
        return curve
    t_lo, t_hi = curve.domain

    def speed(t):
        return float(np.linalg.norm(derivative(curve, t, 1)))

    t_nodes = np.linspace(t_lo, t_hi, n_nodes + 1)
    seg = np.empty(n_nodes)
    for i in range(n_nodes):
        seg[i], _ = quad(speed, t_nodes[i], t_nodes[i + 1], epsabs=quad_tol, epsrel=quad_tol, limit=200)
    s_nodes = np.concatenate(([0.0], np.cumsum(seg)))
    total = float(s_nodes[-1])
    guess = PchipInterpolator(s_nodes, t_nodes)

    def arclen_from(k, t):
        val, _ = quad(speed, t_nodes[k], t, epsabs=quad_tol, epsrel=quad_tol, limit=200)
        return s_nodes[k] + val

    def t_of_s(s):
        s = float(np.clip(s, 0.0, total))
        k = int(np.clip(np.searchsorted(s_nodes, s) - 1, 0, n_nodes - 1))
        t = float(guess(s))
        for _ in range(12):
            res = arclen_from(k, t) - s
            if abs(res) <= 1e-13 * max(1.0, total):
                return t
            t -= res / speed(t)
        # Newton stalled; bisect the bracketing node interval instead
        return brentq(lambda x: arclen_from(k, x) - s, t_nodes[k], t_nodes[k + 1], xtol=1e-13)

    def s_of_t(t):
        k = int(np.clip(np.searchsorted(t_nodes, t) - 1, 0, n_nodes - 1))
        return arclen_from(k, float(t))

    def pos(s):
        return np.asarray(curve.position(t_of_s(s)), dtype=float)

    def dmaps(s):
        t = t_of_s(s)
        a1 = derivative(curve, t, 1)
        a2 = derivative(curve, t, 2)
        v = float(np.linalg.norm(a1))
        vd = float(np.dot(a1, a2)) / v
        return t, a1, a2, v, vd

    def new_d1(s):
        t, a1, _, v, _ = dmaps(s)
        return a1 / v

    def new_d2(s):
        t, a1, a2, v, vd = dmaps(s)
        tp = 1.0 / v
        tpp = -vd / v**3
        return a2 * tp**2 + a1 * tpp

    def new_d3(s):
        t, a1, a2, v, vd = dmaps(s)
        a3 = derivative(curve, t, 3)
        vdd = (float(np.dot(a2, a2)) + float(np.dot(a1, a3)) - vd**2) / v
        tp = 1.0 / v
        tpp = -vd / v**3
        tppp = (3.0 * vd**2 - v * vdd) / v**5
        return a3 * tp**3 + 3.0 * a2 * tp * tpp + a1 * tppp

    return CurveSpec(name=curve.name + "-arclength", position=pos, domain=(0.0, total),
                     parametrization="arc-length", d1=new_d1, d2=new_d2, d3=new_d3,
                     s_of_t=s_of_t, t_of_s=t_of_s)
