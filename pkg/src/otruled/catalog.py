"""Built-in example curves, all arc length parametrized unless noted.

Names accepted by get_curve: helix-ex1, slant-ex2, salkowski-ex3, circle,
line, helix(a,b).
"""

import re

import numpy as np

from .curves import CurveSpec, FrenetData
from .errors import ConfigParseError
from .expressions import parse_scalar_function

RT2 = np.sqrt(2.0)
RT3 = np.sqrt(3.0)
RT26 = np.sqrt(26.0)


def _helix(a, b, domain, name):
    c = np.hypot(a, b)
    c2 = c * c

    def pos(s):
        return np.array([a * np.cos(s / c), a * np.sin(s / c), b * s / c])

    def d1(s):
        return np.array([-a / c * np.sin(s / c), a / c * np.cos(s / c), b / c])

    def d2(s):
        return np.array([-a / c2 * np.cos(s / c), -a / c2 * np.sin(s / c), 0.0])

    def d3(s):
        return np.array([a / c**3 * np.sin(s / c), -a / c**3 * np.cos(s / c), 0.0])

    def scalars(s):
        return a / c2, b / c2, 0.0, 0.0

    return CurveSpec(name=name, position=pos, domain=domain, d1=d1, d2=d2, d3=d3,
                     scalars_fn=scalars)


def helix_ex1():
    """Circular helix with kappa = tau = 1/2."""
    return _helix(1.0, 1.0, (0.0, 3.0 * np.pi), "helix-ex1")


def circle():
    return _helix(1.0, 0.0, (0.0, 2.0 * np.pi), "circle")


def line():
    def pos(s):
        return np.array([s, 0.0, 0.0])

    zero = lambda s: np.zeros(3)
    return CurveSpec(name="line", position=pos, domain=(-10.0, 10.0),
                     d1=lambda s: np.array([1.0, 0.0, 0.0]), d2=zero, d3=zero)


def slant_ex2():
    """Unit-speed slant helix; carries its own smooth signed frame.

    kappa changes sign at |s| = pi, so the generic kappa >= 0 frame would be
    discontinuous there; the signed convention keeps N, B and the curvature
    scalars smooth over the whole domain.
    """

    def pos(s):
        return np.array([1.5 * np.cos(s / 2) + np.cos(1.5 * s) / 6,
                         1.5 * np.sin(s / 2) + np.sin(1.5 * s) / 6,
                         RT3 * np.cos(s / 2)])

    def tangent(s):
        return np.array([-0.75 * np.sin(s / 2) - 0.25 * np.sin(1.5 * s),
                         0.75 * np.cos(s / 2) + 0.25 * np.cos(1.5 * s),
                         -RT3 / 2 * np.sin(s / 2)])

    def normal(s):
        return np.array([-RT3 / 2 * np.cos(s), -RT3 / 2 * np.sin(s), -0.5])

    def normal_d(s):
        return np.array([RT3 / 2 * np.sin(s), -RT3 / 2 * np.cos(s), 0.0])

    def scalars(s):
        return (RT3 / 2 * np.cos(s / 2), -RT3 / 2 * np.sin(s / 2),
                -RT3 / 4 * np.sin(s / 2), -RT3 / 4 * np.cos(s / 2))

    def fr(s):
        T = tangent(s)
        N = normal(s)
        kap, tau, kp, tp = scalars(s)
        return FrenetData(s=float(s), T=T, N=N, B=np.cross(T, N), kappa=kap, tau=tau,
                          kappa_prime=kp, tau_prime=tp)

    def d2(s):
        kap, _, _, _ = scalars(s)
        return kap * normal(s)

    def d3(s):
        kap, _, kp, _ = scalars(s)
        return kp * normal(s) + kap * normal_d(s)

    return CurveSpec(name="slant-ex2", position=pos, domain=(-2.0 * np.pi, 2.0 * np.pi),
                     d1=tangent, d2=d2, d3=d3, frenet_fn=fr, scalars_fn=scalars)


class _TrigSeries:
    """Vector function whose components are sums of A*cos(w*t + p) terms."""

    def __init__(self, components):
        self.components = components

    def __call__(self, t, order=0):
        out = np.empty(3)
        shift = order * np.pi / 2
        for i, terms in enumerate(self.components):
            out[i] = sum(A * w**order * np.cos(w * t + p + shift) for A, w, p in terms)
        return out


def _salkowski_series():
    m = 1.0 / RT26
    pre = 5.0 * m
    w1 = 1.0 + 2.0 * m
    w2 = 1.0 - 2.0 * m
    ax1 = (RT26 - 26.0) / (104.0 + 8.0 * RT26)
    ax2 = (RT26 + 26.0) / (8.0 * RT26 - 104.0)
    half_pi = np.pi / 2
    return _TrigSeries([
        [(pre * ax1, w1, -half_pi), (pre * ax2, w2, -half_pi), (-pre / 2, 1.0, -half_pi)],
        [(-pre * ax1, w1, 0.0), (-pre * ax2, w2, 0.0), (pre / 2, 1.0, 0.0)],
        [(1.25 * pre, 2.0 * m, 0.0)],
    ])


def salkowski_general():
    """The Salkowski curve in its natural (non arc length) parameter."""
    series = _salkowski_series()
    return CurveSpec(name="salkowski-general", position=lambda t: series(t, 0),
                     domain=(-5.0, 5.0), parametrization="general",
                     d1=lambda t: series(t, 1), d2=lambda t: series(t, 2),
                     d3=lambda t: series(t, 3))


def salkowski_ex3():
    """Salkowski curve by arc length: kappa = 1, tau = -s / sqrt(25 - s^2).

    The closed-form parameter maps are s(t) = 5 sin(t/sqrt(26)) and its
    inverse; the domain stops just short of |s| = 5 where the speed of the
    natural parametrization vanishes.
    """
    series = _salkowski_series()
    m = 1.0 / RT26

    def t_of_s(s):
        return RT26 * np.arcsin(s / 5.0)

    def s_of_t(t):
        return 5.0 * np.sin(m * t)

    def chain(s):
        t = t_of_s(s)
        v = 5.0 * m * np.cos(m * t)
        vd = -5.0 * m**2 * np.sin(m * t)
        vdd = -5.0 * m**3 * np.cos(m * t)
        return t, v, vd, vdd

    def pos(s):
        return series(t_of_s(s), 0)

    def d1(s):
        t, v, _, _ = chain(s)
        return series(t, 1) / v

    def d2(s):
        t, v, vd, _ = chain(s)
        return series(t, 2) / v**2 - series(t, 1) * vd / v**3

    def d3(s):
        t, v, vd, vdd = chain(s)
        tp = 1.0 / v
        tpp = -vd / v**3
        tppp = (3.0 * vd**2 - v * vdd) / v**5
        return series(t, 3) * tp**3 + 3.0 * series(t, 2) * tp * tpp + series(t, 1) * tppp

    def scalars(s):
        root = np.sqrt(25.0 - s * s)
        return 1.0, -s / root, 0.0, -25.0 / root**3

    return CurveSpec(name="salkowski-ex3", position=pos, domain=(-4.9995, 4.9995),
                     d1=d1, d2=d2, d3=d3, scalars_fn=scalars,
                     s_of_t=s_of_t, t_of_s=t_of_s)


_FIXED = {
    "helix-ex1": helix_ex1,
    "slant-ex2": slant_ex2,
    "salkowski-ex3": salkowski_ex3,
    "circle": circle,
    "line": line,
}

_HELIX_RE = re.compile(r"^helix\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)$")


def get_curve(name):
    """Look up a catalog curve by name; raises ConfigParseError if unknown."""
    name = name.strip()
    if name in _FIXED:
        return _FIXED[name]()
    mo = _HELIX_RE.match(name)
    if mo:
        try:
            a, b = float(mo.group(1)), float(mo.group(2))
        except ValueError:
            raise ConfigParseError("bad helix parameters in %r" % name)
        if a <= 0.0:
            raise ConfigParseError("helix radius must be positive in %r" % name)
        c = np.hypot(a, b)
        return _helix(a, b, (0.0, 4.0 * np.pi * c), name)
    raise ConfigParseError("unknown curve %r (try helix-ex1, slant-ex2, salkowski-ex3, "
                           "circle, line, helix(a,b))" % name)


def curve_from_expressions(x, y, z, var="t", domain=(0.0, 1.0), name="custom",
                           parametrization="general"):
    """Build a CurveSpec from three coordinate expression strings."""
    fx = parse_scalar_function(x, var)
    fy = parse_scalar_function(y, var)
    fz = parse_scalar_function(z, var)

    def level(k):
        def ev(t):
            return np.array([float(fx[k](t)), float(fy[k](t)), float(fz[k](t))])
        return ev

    return CurveSpec(name=name, position=level(0), domain=domain,
                     parametrization=parametrization,
                     d1=level(1), d2=level(2), d3=level(3))
