"""Acceptance suite: twelve go/no-go checks, one reported line each.

Run with `pytest -v tests/test_acceptance.py` (add -s to see the PASS lines
while the suite runs). Each check prints `PASS criterion NN` after its
assertions clear, or `FAIL criterion NN` before re-raising.
"""

import time
from contextlib import contextmanager

import numpy as np

import otruled as ot
from otruled import catalog
from otruled import numdiff
from otruled.otframe import frame_derivative_matrix

RT2 = np.sqrt(2.0)
RT3 = np.sqrt(3.0)
RT26 = np.sqrt(26.0)


@contextmanager
def criterion(n, desc):
    try:
        yield
    except Exception:
        print("FAIL criterion %02d: %s" % (n, desc))
        raise
    print("PASS criterion %02d: %s" % (n, desc))


def helix_surface():
    return ot.OTSurface(curve=catalog.helix_ex1(), angle=ot.linear_angle(1.0))


def slant_surface():
    return ot.OTSurface(curve=catalog.slant_ex2(), angle=ot.linear_angle(0.5))


def salkowski_surface():
    return ot.OTSurface(curve=catalog.salkowski_ex3(), angle=ot.linear_angle(1.0 / RT26))


def all_surfaces():
    return (helix_surface(), slant_surface(), salkowski_surface())


def test_criterion_01_helix_frame_scalars():
    with criterion(1, "helix surface eta/mu/xi closed forms, 1e-9, under 1s"):
        sf = helix_surface()
        t0 = time.perf_counter()
        worst = 0.0
        for s in np.linspace(0.0, 3 * np.pi, 100):
            fr = ot.ot_frame(sf.curve, sf.angle, s)
            worst = max(worst,
                        abs(fr.eta - 1.5),
                        abs(fr.mu - 0.5 * np.sin(s)),
                        abs(fr.xi - 0.5 * np.cos(s)))
        elapsed = time.perf_counter() - t0
        assert worst <= 1e-9, worst
        assert elapsed < 1.0, elapsed


def test_criterion_02_helix_singular_set():
    with criterion(2, "helix surface singular set is the four base points, 1e-8"):
        rep = ot.singular_set(helix_surface())
        expect = [0.0, np.pi, 2 * np.pi, 3 * np.pi]
        assert len(rep.V) == 4
        for (s, u), e in zip(sorted(rep.V), expect):
            assert abs(s - e) <= 1e-8 and u == 0.0


def test_criterion_03_slant_sigma_and_Y():
    with criterion(3, "slant example: sigma constant at -sqrt(3)/3, Y root, 1e-6/1e-8"):
        c = catalog.slant_ex2()
        for s in np.linspace(-2 * np.pi, 2 * np.pi, 400):
            fr = ot.frenet(c, s)
            if abs(fr.kappa) < 1e-3:
                continue
            sig = ot.slant_function(fr.kappa, fr.tau, fr.kappa_prime, fr.tau_prime)
            assert abs(sig - (-RT3 / 3)) <= 1e-6
        rep = ot.singular_set(slant_surface())
        target = 2 * (np.pi - np.arccos(RT3 / 3))
        assert any(abs(s - target) <= 1e-8 for s, _ in rep.Y)


def test_criterion_04_salkowski_constants():
    with criterion(4, "salkowski example: kappa = 1 and eta = 1 + sqrt(26)/26, 1e-9"):
        sf = salkowski_surface()
        eta_expect = 1.0 + RT26 / 26.0
        lo, hi = -RT26 * np.pi / 2 + 0.1, RT26 * np.pi / 2 - 0.1
        for t in np.linspace(lo, hi, 100):
            s = 5.0 * np.sin(t / RT26)  # arc length of the printed parameter
            fr = ot.frenet(sf.curve, s)
            assert abs(fr.kappa - 1.0) <= 1e-9
            ofr = ot.ot_frame(sf.curve, sf.angle, s)
            assert abs(ofr.eta - eta_expect) <= 1e-9


def test_criterion_05_closed_forms_vs_oracle():
    with criterion(5, "closed-form E..N, K, H vs FD oracle, 200 pts/surface, 1e-6, <10s"):
        t0 = time.perf_counter()
        for sf in all_surfaces():
            rep = ot.compare_closed_forms(sf, n_points=200, seed=0, rtol=1e-6)
            assert rep.ok, rep.worst()
        assert time.perf_counter() - t0 < 10.0


def test_criterion_06_weingarten_identities():
    with criterion(6, "det(S) = K and tr(S)/2 = H at sampled regular points, 1e-9"):
        for sf in all_surfaces():
            rep = ot.compare_closed_forms(sf, n_points=200, seed=0)
            for s, u in {(r.s, r.u) for r in rep.rows}:
                cd = ot.weingarten(sf, s, u)
                S = np.array([[cd.A1, cd.B1], [cd.A2, cd.B2]])
                assert abs(np.linalg.det(S) - cd.K) <= 1e-9
                assert abs(np.trace(S) / 2 - cd.H) <= 1e-9


def test_criterion_07_frame_properties():
    with criterion(7, "frame orthonormality 1e-8, exact skew, FD residual 1e-5"):
        for sf in (helix_surface(), slant_surface()):
            def rows(x):
                fr = ot.ot_frame(sf.curve, sf.angle, x)
                return np.array([fr.q_o, fr.B, fr.r])

            lo, hi = sf.curve.domain
            for s in np.linspace(lo + 0.05, hi - 0.05, 40):
                R = rows(s)
                assert np.max(np.abs(R @ R.T - np.eye(3))) <= 1e-8
                M = frame_derivative_matrix(ot.ot_frame(sf.curve, sf.angle, s))
                assert np.array_equal(M, -M.T)
                assert np.max(np.abs(numdiff.d1(rows, s) - M @ R)) <= 1e-5


def test_criterion_08_rulings_trivial_invariants():
    with criterion(8, "rulings have k_n = 0 and kappa_g = 0, 1e-12, 50 per surface"):
        rng = np.random.default_rng(8)
        for sf in all_surfaces():
            lo, hi = sf.curve.domain
            for s0 in rng.uniform(lo + 0.05, hi - 0.05, 50):
                c = ot.ruling_curve(float(s0), sf.u_domain)
                t = float(rng.uniform(*sf.u_domain))
                try:
                    inv = ot.invariants_closed_form(sf, c, t)
                    kg = ot.geodesic_curvature_exact(sf, c, t)
                except ot.SingularPoint:
                    continue
                assert abs(inv.k_n) <= 1e-12 and abs(kg) <= 1e-12


def test_criterion_09_plane_circle_gauss_map():
    with criterion(9, "circle with theta = s: K = H = 0 and constant Gauss map, 1e-8"):
        sf = ot.OTSurface(curve=catalog.circle(), angle=ot.linear_angle(1.0))
        # u <= -0.55 keeps f = sin(s) - 2u >= 0.1: one regular oriented sheet
        U0 = None
        for s in np.linspace(0.05, 2 * np.pi - 0.05, 40):
            for u in np.linspace(-1.0, -0.55, 8):
                cd = ot.curvatures(sf, s, u)
                assert cd.K == 0.0 and cd.H == 0.0
                U = ot.jet(sf, s, u).U
                U0 = U if U0 is None else U0
                assert np.max(np.abs(U - U0)) <= 1e-8


def test_criterion_10_tangent_surface_mean_curvature():
    with criterion(10, "theta = 0 helix surface: H = tau/(2 u eta), 1e-9, 50 points"):
        sf = ot.OTSurface(curve=catalog.helix_ex1(), angle=ot.constant_angle(0.0))
        rng = np.random.default_rng(10)
        for _ in range(50):
            s = float(rng.uniform(0.1, 3 * np.pi - 0.1))
            u = float(rng.uniform(-1.0, -0.05))  # f = -u eta > 0 sheet
            fr = ot.frenet(sf.curve, s)
            cd = ot.curvatures(sf, s, u)
            # constant angle: eta reduces to kappa
            assert abs(cd.H - fr.tau / (2 * u * fr.kappa)) <= 1e-9


def test_criterion_11_striction_line():
    with criterion(11, "striction line: <c', q'> = 0 within 1e-6 and c(0) = (1,0,0)"):
        sf = helix_surface()
        c0 = ot.striction_line(sf, 0.0)
        assert np.max(np.abs(c0 - np.array([1.0, 0.0, 0.0]))) <= 1e-8
        h = 1e-5
        for s in np.linspace(0.1, 3 * np.pi - 0.1, 100):
            cp = (ot.striction_line(sf, s + h) - ot.striction_line(sf, s - h)) / (2 * h)
            qp = (ot.ot_frame(sf.curve, sf.angle, s + h).q_o
                  - ot.ot_frame(sf.curve, sf.angle, s - h).q_o) / (2 * h)
            assert abs(cp @ qp) <= 1e-6


def test_criterion_12_central_normal_slant_axis():
    with criterion(12, "theta = -integral(kappa) on the helix: h-field slant, 1e-6"):
        c = catalog.helix_ex1()
        sf = ot.OTSurface(curve=c, angle=ot.neg_integral_kappa(c))
        rep = ot.slant_ruled_detect(ot.from_ot(sf), which="h")
        assert rep.is_slant
        assert rep.residual <= 1e-6
        assert abs(abs(rep.axis[2]) - 1.0) <= 1e-6
