"""Director angle functions and the moving frame attached to the director.

The director q_o(s) = cos(theta) T + sin(theta) N tilts the tangent toward the
normal inside the osculating plane. The frame {q_o, B, r} with
r = sin(theta) T - cos(theta) N evolves by a skew matrix whose entries
(eta, mu, xi) replace (kappa, tau) as the natural curvatures of the tilted
frame: eta = theta' + kappa, mu = tau sin(theta), xi = tau cos(theta).
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from . import numdiff
from .curves import frenet
from .errors import ConfigParseError
from .expressions import parse_scalar_function

_N_THETA_NODES = 2048


@dataclass(frozen=True)
class AngleFunction:
    """Director angle theta(s) with its first two derivatives."""

    theta: Callable
    theta_prime: Callable
    theta_double_prime: Callable
    kind: str = "custom"


@dataclass(frozen=True)
class OTFrameData:
    s: float
    q_o: np.ndarray
    B: np.ndarray
    r: np.ndarray
    eta: float
    mu: float
    xi: float


def _check_consistency(angle, probe_domain):
    # catches hand-written derivative callables that do not match theta
    lo, hi = probe_domain
    pad = 0.05 * (hi - lo)
    for s in np.linspace(lo + pad, hi - pad, 5):
        fd = float(numdiff.d1(angle.theta, s))
        val = float(angle.theta_prime(s))
        if abs(fd - val) > 1e-6 * max(1.0, abs(val)):
            raise ValueError("theta_prime inconsistent with theta at s=%g: %g vs fd %g" % (s, val, fd))
        fd2 = float(numdiff.d1(angle.theta_prime, s))
        val2 = float(angle.theta_double_prime(s))
        if abs(fd2 - val2) > 1e-6 * max(1.0, abs(val2)):
            raise ValueError("theta_double_prime inconsistent at s=%g: %g vs fd %g" % (s, val2, fd2))
    return angle


def constant_angle(c):
    c = float(c)
    return AngleFunction(theta=lambda s: c, theta_prime=lambda s: 0.0,
                         theta_double_prime=lambda s: 0.0, kind="constant")


def linear_angle(a):
    a = float(a)
    return AngleFunction(theta=lambda s: a * s, theta_prime=lambda s: a,
                         theta_double_prime=lambda s: 0.0, kind="linear")


def custom_angle(theta, theta_prime=None, theta_double_prime=None,
                 probe_domain=(0.0, 1.0), kind="custom"):
    """Wrap user callables into an AngleFunction, checking derivative consistency."""
    if theta_prime is None:
        theta_prime = lambda s: float(numdiff.d1(theta, s, h=1e-4))
    if theta_double_prime is None:
        theta_double_prime = lambda s, tp=theta_prime: float(numdiff.d1(tp, s, h=1e-4))
    angle = AngleFunction(theta=theta, theta_prime=theta_prime,
                          theta_double_prime=theta_double_prime, kind=kind)
    return _check_consistency(angle, probe_domain)


def angle_from_expression(text, probe_domain=(0.0, 1.0)):
    f0, f1, f2, _ = parse_scalar_function(text, var="s")
    angle = AngleFunction(theta=lambda s: float(f0(s)), theta_prime=lambda s: float(f1(s)),
                          theta_double_prime=lambda s: float(f2(s)), kind="expression")
    return _check_consistency(angle, probe_domain)


def neg_integral_kappa(curve, n_nodes=_N_THETA_NODES):
    """theta(s) = -integral of kappa from s0, which cancels eta = theta' + kappa.

    s0 is 0 when the domain contains it, otherwise the left endpoint. The
    integral is tabulated by per-interval adaptive quadrature and interpolated
    with a clamped cubic spline; the derivatives -kappa and -kappa' are exact.
    """
    lo, hi = curve.domain
    s0 = 0.0 if lo <= 0.0 <= hi else lo

    def kap(s):
        return frenet(curve, s).kappa

    nodes = np.linspace(lo, hi, n_nodes + 1)
    seg = np.empty(n_nodes)
    for i in range(n_nodes):
        seg[i], _ = quad(kap, nodes[i], nodes[i + 1], epsabs=1e-13, epsrel=1e-13, limit=100)
    acc = np.concatenate(([0.0], np.cumsum(seg)))
    base = float(np.interp(s0, nodes, acc))
    spline = CubicSpline(nodes, -(acc - base), bc_type=((1, -kap(lo)), (1, -kap(hi))))

    def th(s):
        return float(spline(s))

    def thp(s):
        return -frenet(curve, s).kappa

    def thpp(s):
        return -frenet(curve, s).kappa_prime

    return AngleFunction(theta=th, theta_prime=thp, theta_double_prime=thpp,
                         kind="neg-integral-kappa")


def make_angle(spec, curve=None, probe_domain=None):
    """Parse an angle spec string: constant(c), linear(a), neg-integral-kappa,
    or an expression in s."""
    spec = spec.strip()
    for prefix, ctor in (("constant", constant_angle), ("linear", linear_angle)):
        if spec.startswith(prefix + "(") and spec.endswith(")"):
            inner = spec[len(prefix) + 1:-1]
            f0, _, _, _ = parse_scalar_function(inner, var="s")
            val = float(f0(0.0))  # inner must be a constant expression
            return ctor(val)
    if spec == "neg-integral-kappa":
        if curve is None:
            raise ConfigParseError("neg-integral-kappa angle needs a curve")
        return neg_integral_kappa(curve)
    if probe_domain is None:
        probe_domain = curve.domain if curve is not None else (0.0, 1.0)
    return angle_from_expression(spec, probe_domain)


def ot_frame(curve, angle, s):
    """Director frame {q_o, B, r} and its curvatures (eta, mu, xi) at s."""
    fr = frenet(curve, s)
    th = float(angle.theta(s))
    thp = float(angle.theta_prime(s))
    sth, cth = np.sin(th), np.cos(th)
    q_o = cth * fr.T + sth * fr.N
    r = sth * fr.T - cth * fr.N
    return OTFrameData(s=float(s), q_o=q_o, B=fr.B, r=r,
                       eta=thp + fr.kappa, mu=fr.tau * sth, xi=fr.tau * cth)


def frame_derivative_matrix(frame):
    """Coefficient matrix of d/ds acting on rows (q_o, B, r); skew by construction."""
    eta, mu, xi = frame.eta, frame.mu, frame.xi
    return np.array([[0.0, mu, -eta],
                     [-mu, 0.0, xi],
                     [eta, -xi, 0.0]])


def frenet_from_ot(eta, mu, xi, theta_prime):
    """Invert (eta, mu, xi) to (kappa, |tau|). The sign of tau is not recoverable."""
    return eta - theta_prime, float(np.hypot(mu, xi))


def slant_function_ot(eta, mu, xi, eta_p, mu_p, xi_p, theta_p, theta_pp):
    """Slant helix function sigma expressed through the director curvatures.

    Returned with the sign convention tau > 0; the true sigma flips sign with
    tau, so compare absolute values unless the sign of tau is known. Returns
    nan when mu = xi = 0 (torsion-free direction, sigma undefined this way).
    """
    kap = eta - theta_p
    kap_p = eta_p - theta_pp
    tau2 = mu * mu + xi * xi
    den = np.sqrt(tau2) * (kap * kap + tau2) ** 1.5
    if den == 0.0:
        return float("nan")
    return (kap * (mu * mu_p + xi * xi_p) - tau2 * kap_p) / den
