"""Central-difference stencils with one Richardson extrapolation step.

Works for scalar- and vector-valued functions of one real variable.
Default steps were tuned so that extrapolated truncation error and
float64 roundoff are balanced for O(1) smooth inputs: first derivatives
are good to ~1e-11, second to ~1e-9, third to ~1e-7.
"""

import numpy as np


def d1(f, x, h=1e-5):
    """First derivative of f at x."""

    def stencil(hh):
        return (np.asarray(f(x + hh)) - np.asarray(f(x - hh))) / (2.0 * hh)

    coarse = stencil(h)
    fine = stencil(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def d2(f, x, h=3e-4):
    """Second derivative of f at x.

    Steps much below ~1e-4 amplify roundoff past 1e-6 here, hence the
    larger default than d1.
    """

    def stencil(hh):
        return (np.asarray(f(x + hh)) - 2.0 * np.asarray(f(x)) + np.asarray(f(x - hh))) / hh**2

    coarse = stencil(h)
    fine = stencil(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def d3(f, x, h=1e-2):
    """Third derivative of f at x, five-point antisymmetric stencil."""

    def stencil(hh):
        return (
            -np.asarray(f(x - 2.0 * hh))
            + 2.0 * np.asarray(f(x - hh))
            - 2.0 * np.asarray(f(x + hh))
            + np.asarray(f(x + 2.0 * hh))
        ) / (2.0 * hh**3)

    coarse = stencil(h)
    fine = stencil(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def d1_bounded(f, x, lo, hi, h=1e-5):
    """First derivative where f is only defined on [lo, hi].

    Falls back to a second-order one-sided stencil near the ends.
    """
    if x - 2.0 * h >= lo and x + 2.0 * h <= hi:
        return d1(f, x, h)
    if x + 2.0 * h <= hi:
        return (-3.0 * np.asarray(f(x)) + 4.0 * np.asarray(f(x + h)) - np.asarray(f(x + 2.0 * h))) / (2.0 * h)
    if x - 2.0 * h >= lo:
        return (3.0 * np.asarray(f(x)) - 4.0 * np.asarray(f(x - h)) + np.asarray(f(x - 2.0 * h))) / (2.0 * h)
    raise ValueError("interval [%g, %g] too short for step %g" % (lo, hi, h))
