"""Independent checks: generic ruled-surface oracle and frame detectors.

Everything here treats the surface as a bare ruled map base(s) + u director(s)
and differentiates numerically, so agreement with the closed forms in
surface.py is evidence for both sides. generic_fundamental_forms uses no
OT algebra at all.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import numdiff
from .curves import derivative, frenet
from .errors import (CurvatureVanishes, CylindricalDirection, DegenerateMetric,
                     InsufficientSamples, SingularPoint)
from .otframe import ot_frame
from .surface import curvatures

EPS_REG = 1e-9
_H2_FLOOR = 3e-4  # second differences drown in roundoff below this


@dataclass(frozen=True)
class GenericRuledSurface:
    """A ruled surface given only by base curve and director field."""

    base: object
    director: Callable
    director_d1: Optional[Callable] = None

    def point(self, s, u):
        return np.asarray(self.base.position(s), dtype=float) + u * np.asarray(self.director(s), dtype=float)


def from_ot(surface):
    """Adapt an OTSurface to the generic interface (director via the frame only)."""

    def director(s):
        return ot_frame(surface.curve, surface.angle, s).q_o

    return GenericRuledSurface(base=surface.curve, director=director)


class GenericForms(NamedTuple):
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float


def _director_deriv(gsurf, s, h=1e-5):
    if gsurf.director_d1 is not None:
        return np.asarray(gsurf.director_d1(s), dtype=float)
    lo, hi = gsurf.base.domain
    return numdiff.d1_bounded(gsurf.director, s, lo, hi, h)


def generic_fundamental_forms(gsurf, s, u, h_step=1e-5):
    """Fundamental forms from central-difference partials and the cross product.

    First-order partials use h_step; second differences use
    max(h_step, 3e-4) since smaller steps amplify roundoff past 1e-6.
    """
    h2 = max(h_step, _H2_FLOOR)
    phi_s = numdiff.d1(lambda x: gsurf.point(x, u), s, h_step)
    phi_u = numdiff.d1(lambda x: gsurf.point(s, x), u, h_step)
    phi_ss = numdiff.d2(lambda x: gsurf.point(x, u), s, h2)
    phi_uu = numdiff.d2(lambda x: gsurf.point(s, x), u, h2)
    phi_su = _director_deriv(gsurf, s, h_step)
    cr = np.cross(phi_s, phi_u)
    nrm = float(np.linalg.norm(cr))
    if nrm <= 1e-8:
        raise SingularPoint("normal undefined at (s, u) = (%g, %g)" % (s, u))
    U = cr / nrm
    return GenericForms(E=float(phi_s @ phi_s), F=float(phi_s @ phi_u), G=float(phi_u @ phi_u),
                        L=float(phi_ss @ U), M=float(phi_su @ U), N=float(phi_uu @ U))


def generic_K_H(forms):
    """Gaussian and mean curvature from the form quotients."""
    den = forms.E * forms.G - forms.F**2
    if den <= 1e-16:
        raise DegenerateMetric("EG - F^2 = %g" % den)
    K = (forms.L * forms.N - forms.M**2) / den
    H = (forms.E * forms.N - 2.0 * forms.F * forms.M + forms.G * forms.L) / (2.0 * den)
    return K, H


def developability_det(gsurf, s):
    """det(base', director, director'); zero iff the surface is developable at s."""
    a1 = derivative(gsurf.base, s, 1)
    q = np.asarray(gsurf.director(s), dtype=float)
    return float(a1 @ np.cross(q, _director_deriv(gsurf, s)))


@dataclass(frozen=True)
class RuledFrame:
    s: float
    q: np.ndarray
    h: np.ndarray
    a: np.ndarray


def ruled_frame(gsurf, s):
    """Orthonormal frame {q, h, a} along the ruling direction field.

    h is the unit derivative direction of q, a = q x h. Raises
    CylindricalDirection where q' vanishes.
    """
    q = np.asarray(gsurf.director(s), dtype=float)
    qp = _director_deriv(gsurf, s)
    nrm = float(np.linalg.norm(qp))
    if nrm <= EPS_REG:
        raise CylindricalDirection("director derivative vanishes at s = %g" % s)
    h = qp / nrm
    return RuledFrame(s=float(s), q=q, h=h, a=np.cross(q, h))


@dataclass
class SlantReport:
    """Fixed-axis test for one ruled-frame vector field.

    axis minimizes the variance of <v(s), axis> over the sign-aligned
    samples; residual is the standard deviation along it. degenerate marks a
    (numerically) constant field, where the axis is the mean direction and
    any orthogonal wobble is below tolerance anyway.
    """

    which: str
    axis: np.ndarray
    residual: float
    mean_cos: float
    is_slant: bool
    degenerate: bool = False


def slant_ruled_detect(gsurf, which="q", s_grid=None, n=200, tol_helix=1e-6):
    """Detect whether a ruled-frame vector keeps a constant angle with a fixed axis."""
    if s_grid is None:
        lo, hi = gsurf.base.domain
        pad = 1e-3 * (hi - lo)
        s_grid = np.linspace(lo + pad, hi - pad, n)
    vecs = []
    for s in s_grid:
        # the director itself needs no frame, so a constant q stays sampleable
        if which == "q":
            vecs.append(np.asarray(gsurf.director(s), dtype=float))
            continue
        try:
            fr = ruled_frame(gsurf, s)
        except (CylindricalDirection, CurvatureVanishes):
            continue
        vecs.append(getattr(fr, which))
    if len(vecs) < 8:
        raise InsufficientSamples("only %d frame samples available" % len(vecs))
    vecs = np.asarray(vecs)
    # a smooth field sampled densely flips sign only through our convention
    for i in range(1, len(vecs)):
        if float(vecs[i] @ vecs[i - 1]) < 0.0:
            vecs[i] = -vecs[i]
    mean = vecs.mean(axis=0)
    centered = vecs - mean
    cov = centered.T @ centered / len(vecs)
    evals, evecs = np.linalg.eigh(cov)
    if evals[1] <= tol_helix**2:
        axis = mean / np.linalg.norm(mean)
        return SlantReport(which=which, axis=axis, residual=float(np.sqrt(max(evals[0], 0.0))),
                           mean_cos=float(np.mean(vecs @ axis)), is_slant=True, degenerate=True)
    axis = evecs[:, 0]
    proj = vecs @ axis
    if np.mean(proj) < 0.0:
        axis = -axis
        proj = -proj
    residual = float(np.std(proj))
    return SlantReport(which=which, axis=axis, residual=residual,
                       mean_cos=float(np.mean(proj)), is_slant=residual <= tol_helix)


@dataclass(frozen=True)
class DiscrepancyRow:
    s: float
    u: float
    quantity: str
    closed_form: float
    oracle: float
    abs_err: float
    rel_err: float
    ok: bool


@dataclass
class DiscrepancyReport:
    rows: list
    n_points: int
    rtol: float

    @property
    def ok(self):
        return all(r.ok for r in self.rows)

    @property
    def max_abs_err(self):
        return max((r.abs_err for r in self.rows), default=0.0)

    def worst(self):
        """Row with the largest error relative to the tolerance rule's scale."""
        return max(self.rows, key=lambda r: r.abs_err / max(1.0, abs(r.oracle)), default=None)


def compare_closed_forms(surface, n_points=200, seed=0, h_step=1e-5, rtol=1e-6,
                         regularity_margin=0.01):
    """Compare closed-form E..N, K, H against the generic FD oracle.

    Samples n_points uniform (s, u) pairs, rejecting points whose
    f^2 + g^2 falls under regularity_margin (the oracle loses accuracy
    approaching the singular set) and points too close to the s ends for the
    differencing stencil. A row is ok when
    |closed - oracle| <= max(rtol, rtol |oracle|).
    """
    gsurf = from_ot(surface)
    rng = np.random.default_rng(seed)
    slo, shi = surface.s_domain
    pad = max(4.0 * _H2_FLOOR, 0.01 * (shi - slo))
    ulo, uhi = surface.u_domain
    rows = []
    accepted = 0
    tries = 0
    while accepted < n_points:
        tries += 1
        if tries > 200 * n_points:
            raise InsufficientSamples("could not find %d regular sample points" % n_points)
        s = rng.uniform(slo + pad, shi - pad)
        u = rng.uniform(ulo, uhi)
        try:
            cd = curvatures(surface, s, u)
        except (SingularPoint, CurvatureVanishes):
            continue
        if cd.E * cd.G - cd.F**2 < regularity_margin:
            continue
        forms = generic_fundamental_forms(gsurf, s, u, h_step)
        K_o, H_o = generic_K_H(forms)
        pairs = [("E", cd.E, forms.E), ("F", cd.F, forms.F), ("G", cd.G, forms.G),
                 ("L", cd.L, forms.L), ("M", cd.M, forms.M), ("N", cd.N, forms.N),
                 ("K", cd.K, K_o), ("H", cd.H, H_o)]
        for name, closed, oracle in pairs:
            err = abs(closed - oracle)
            rows.append(DiscrepancyRow(s=s, u=u, quantity=name, closed_form=closed,
                                       oracle=oracle, abs_err=err,
                                       rel_err=err / max(abs(oracle), 1e-30),
                                       ok=err <= max(rtol, rtol * abs(oracle))))
        accepted += 1
    return DiscrepancyReport(rows=rows, n_points=accepted, rtol=rtol)
