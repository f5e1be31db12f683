"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
summary values alongside the pass/fail verdicts.
"""

import math

import numpy as np
import pytest
import scipy.integrate

from wedgemellin import (DilatedField, FieldSum, GridField, PoissonParams,
                         SeparableField, SpaceParams, WedgeParams,
                         builtin_test_family, equivalence_report,
                         fd_dirichlet_eigenvalues, gaussian_bump, make_grid,
                         mellin_forward, mellin_forward_profile,
                         mellin_inverse, multiplier_check, norm_integral,
                         norm_integral_vector, norm_mellin, norm_polar,
                         parseval_check, plateau_window, resolvent_1d,
                         resolvent_estimate_check, sample, sine_mode,
                         solve_poisson, build_t_table,
                         cart_derivative_via_table)
from wedgemellin.fields import FieldSum as _FieldSum  # noqa: F401


def _report(criterion, detail):
    print(f"\nACCEPTANCE {criterion}: PASS  [{detail}]")


def manufactured_pair(wedge, sigma=1.0, mode=1):
    eta = gaussian_bump(0.0, sigma)
    freq2 = (mode * math.pi / wedge.kappa) ** 2
    u_star = SeparableField("u_star", eta, sine_mode(mode, wedge))
    rad = lambda s, o=0: np.exp(-2.0 * np.asarray(s, float)) * (
        eta(s, 2) - freq2 * eta(s, 0))
    return u_star, SeparableField("f", rad, sine_mode(mode, wedge), max_order=0)


def convergence_pair(wedge):
    radial = gaussian_bump(0.0, 0.9)
    k = wedge.kappa
    angular = plateau_window(0.3 * k, 0.55 * k, 0.2 * k)
    u_star = SeparableField("u_star", radial, angular)
    rad2 = lambda s, o=0: np.exp(-2.0 * np.asarray(s, float)) * radial(s, 2)
    rad0 = lambda s, o=0: np.exp(-2.0 * np.asarray(s, float)) * radial(s, 0)
    ang2 = lambda phi, o=0: angular(phi, 2)
    f = FieldSum([(1.0, SeparableField("fr", rad2, angular, max_order=0)),
                  (1.0, SeparableField("fa", rad0, ang2, max_order=0))])
    return u_star, f


def annulus_bump(wedge):
    k = wedge.kappa
    return SeparableField("annulus_bump", plateau_window(0.1, 0.55, 0.15),
                          plateau_window(0.35 * k, 0.55 * k, 0.15 * k),
                          max_order=0)


def test_criterion_1_mellin_round_trip():
    wedge = WedgeParams(math.pi)
    grid = make_grid(-12.0, 12.0, 4096, 8, wedge)
    worst = 0.0
    for sigma, c in ((0.8, 0.0), (1.2, 0.0), (1.0, -1.0), (1.0, 0.5)):
        vals = np.broadcast_to(gaussian_bump(0.0, sigma)(grid.s_nodes)[:, None],
                               (grid.n_s, grid.n_phi)).astype(complex).copy()
        gf = GridField(grid, vals)
        back = mellin_inverse(mellin_forward(gf, c))
        rel = np.linalg.norm(back.values - vals) / np.linalg.norm(vals)
        worst = max(worst, rel)
        assert rel <= 1e-10, (sigma, c, rel)
    _report(1, f"round trip rel L2 error <= {worst:.2e} at n_s=4096")


def test_criterion_2_parseval_multiplier_gamma():
    wedge = WedgeParams(math.pi)
    grid = make_grid(-12.0, 12.0, 4096, 8, wedge)
    bump = gaussian_bump(0.0, 1.0)
    u = lambda r: bump(np.log(np.asarray(r, dtype=float)))
    _, _, gap = parseval_check(u, u, 0.25, grid)
    assert gap <= 1e-8
    dev = multiplier_check(u, 0.0, grid, du=lambda r: bump(np.log(r), 1))
    assert dev <= 1e-7

    wide = make_grid(-30.0, 6.0, 4096, 8, wedge)
    prof = np.exp(-np.exp(wide.s_nodes)).astype(complex)
    gammas = {}
    for c, expect in ((-1.0, 1.0), (-2.0, 1.0), (-3.0, 2.0)):
        got = mellin_forward_profile(prof, wide, c)[0].real
        oracle = scipy.integrate.quad(lambda r: r ** (-c - 1) * math.exp(-r),
                                      0.0, np.inf)[0]
        assert abs(got - expect) / expect <= 1e-8
        assert abs(oracle - expect) / expect <= 1e-8
        gammas[expect] = got
    _report(2, f"parseval gap {gap:.1e}, multiplier dev {dev:.1e}, "
               f"Gamma(1),Gamma(2),Gamma(3) rel errors <= 1e-8")


def test_criterion_3_fd_spectrum_convergence():
    orders_seen = []
    for kappa in (math.pi / 2, math.pi, 1.5 * math.pi):
        wedge = WedgeParams(kappa)
        exact = (np.arange(1, 4) * wedge.exponent) ** 2
        errs = [np.abs(fd_dirichlet_eigenvalues(wedge, m, 3) - exact)
                for m in (400, 800)]
        orders = np.log2(errs[0] / errs[1])
        orders_seen.extend(orders)
        assert np.all((orders >= 1.8) & (orders <= 2.2)), (kappa, orders)
    _report(3, f"observed FD orders {np.round(orders_seen, 3).tolist()}")


def test_criterion_4_resolvent_cross_agreement():
    wedge = WedgeParams(math.pi)
    rng = np.random.default_rng(41)
    n_fd = 1024
    h = wedge.kappa / (n_fd + 1)
    nodes = h * np.arange(1, n_fd + 1)
    c_h2 = 50.0 * h * h
    worst_fd, worst_green = 0.0, 0.0
    for _ in range(50):
        s = rng.uniform(0.05, 0.9)     # clear of the forbidden offsets +-n
        t = rng.uniform(-20.0, 20.0)
        lam = complex(s, t)
        coeff = rng.normal(size=4)
        f = lambda phi: sum(c * np.sin((n + 1) * phi)
                            for n, c in enumerate(coeff))
        u_sine = resolvent_1d(lam, f, wedge, "sine", phi_out=nodes, n_modes=32)
        u_fd = resolvent_1d(lam, f, wedge, "fd", n_fd=n_fd)
        u_green = resolvent_1d(lam, f, wedge, "green", phi_out=nodes)
        den = np.linalg.norm(u_sine)
        gap_fd = np.linalg.norm(u_sine - u_fd) / den
        gap_green = np.linalg.norm(u_sine - u_green) / den
        assert gap_fd <= max(1e-6, c_h2), (lam, gap_fd)
        assert gap_green <= max(1e-6, c_h2), (lam, gap_green)
        worst_fd = max(worst_fd, gap_fd)
        worst_green = max(worst_green, gap_green)
    _report(4, f"50 samples: sine-fd <= {worst_fd:.2e}, "
               f"sine-green <= {worst_green:.2e}, bound max(1e-6, {c_h2:.2e})")


def test_criterion_5_resolvent_estimate():
    wedge = WedgeParams(math.pi)
    f = lambda phi: np.sin(phi) + 0.4 * np.sin(2 * phi) + 0.1 * np.sin(5 * phi)
    ts = np.linspace(0.0, 100.0, 26)
    ratios = np.array([resolvent_estimate_check(0.1 + 1j * t, f, 1.0, wedge)
                       for t in ts])
    assert np.all(np.isfinite(ratios))
    bound = float(np.max(ratios))
    slope = np.polyfit(np.log(np.hypot(0.1, ts[1:])), np.log(ratios[1:]), 1)[0]
    assert slope <= 0.05
    median = float(np.median(ratios))
    near = resolvent_estimate_check(1.0 - 1e-3, f, 1.0, wedge)
    assert near >= 100.0 * median
    _report(5, f"ratio bound {bound:.3f}, log-log slope {slope:+.4f}, "
               f"near-pole blowup {near / median:.0f}x the admissible median")


def test_criterion_6_manufactured_solution():
    wedge = WedgeParams(math.pi)
    grid = make_grid(-12.0, 12.0, 1024, 64, wedge)
    u_star, f = manufactured_pair(wedge)
    pp = PoissonParams(wedge, 2.0, 2.0, grid, n_modes=64)
    u, report = solve_poisson(f, pp, probe_corner=False)
    exact = sample(u_star, grid)
    rel = np.linalg.norm(u.values - exact.values) / np.linalg.norm(exact.values)
    assert rel <= 1e-6
    assert report.residual <= 1e-3

    u_star_c, f_c = convergence_pair(wedge)
    errs = []
    level = (512, 32, 16)
    for _ in range(4):   # three refinement steps
        n_s, n_phi, n_modes = level
        g = make_grid(-12.0, 12.0, n_s, n_phi, wedge)
        uu, _ = solve_poisson(f_c, PoissonParams(wedge, 2.0, 2.0, g,
                                                 n_modes=n_modes),
                              probe_corner=False)
        ee = sample(u_star_c, g)
        errs.append(np.linalg.norm(uu.values - ee.values)
                    / np.linalg.norm(ee.values))
        level = (n_s * 2, n_phi * 2, n_modes * 2)
    assert errs[0] > errs[1] > errs[2] > errs[3]
    _report(6, f"rel error {rel:.2e} (<=1e-6), residual {report.residual:.2e} "
               f"(<=1e-3), refinement errors {[f'{e:.1e}' for e in errs]}")


def test_criterion_7_corner_exponents():
    slopes = {}
    for kappa in (2.0 * math.pi / 3.0, math.pi, 1.5 * math.pi):
        wedge = WedgeParams(kappa)
        grid = make_grid(-10.0, 18.0, 2048, 48, wedge)
        f = annulus_bump(wedge)
        _, report = solve_poisson(f, PoissonParams(wedge, 2.0, 2.0, grid,
                                                   n_modes=24))
        expect = wedge.exponent
        assert report.corner_slope == pytest.approx(expect, rel=0.02), kappa
        slopes[round(kappa, 3)] = (report.corner_slope, expect)
    _report(7, "fitted/expected slopes " + ", ".join(
        f"kappa={k}: {s:.4f}/{e:.4f}" for k, (s, e) in slopes.items()))


def test_criterion_8_norm_identities():
    wedge = WedgeParams(math.pi)
    grid = make_grid(-16.0, 16.0, 512, 48, wedge)   # 1/ds integer: exact shift
    family = builtin_test_family(wedge)
    u = family[0]

    # scaling covariance for every gamma
    for gamma, p in ((0, 2.0), (1, 2.0), (2, 2.0)):
        sp = SpaceParams(gamma, p, 2.5, 1.8)
        lhs = norm_integral(DilatedField(u, math.e), sp, grid) ** p
        rhs = math.exp(-sp.theta) * norm_integral(u, sp, grid) ** p
        assert abs(lhs - rhs) / rhs <= 1e-10

    # double-weight identity at gamma = 0
    p, Theta, theta = 2.0, 2.6, 1.3
    base = norm_integral(u, SpaceParams(0, p, Theta, theta), grid)
    power = (theta - Theta) / p
    shifted_radial = lambda s, o=0: np.exp(power * np.asarray(s, float)) * u.radial(s, 0)
    shifted = SeparableField("shifted", shifted_radial, u.angular, max_order=0)
    other = norm_integral(shifted, SpaceParams(0, p, Theta, Theta), grid)
    assert abs(base - other) / base <= 1e-10

    # Theta-monotonicity at gamma = 0
    vals = [norm_integral(u, SpaceParams(0, 2.0, T, 2.1), grid)
            for T in (1.4, 2.0, 2.7)]
    assert vals[0] >= vals[1] >= vals[2]

    # support-localized theta-monotonicity, both factors
    off = next(f for f in family if f.name == "offaxis")
    R, r = math.exp(1.8), math.exp(-0.3)
    t0, t1 = 1.7, 2.9
    n0 = norm_integral(off, SpaceParams(0, p, 2.0, t0), grid)
    n1 = norm_integral(off, SpaceParams(0, p, 2.0, t1), grid)
    assert n1 <= R ** ((t1 - t0) / p) * n0 * (1.0 + 1e-10)
    assert n0 <= r ** ((t0 - t1) / p) * n1 * (1.0 + 1e-10)
    _report(8, "scaling, double-weight, Theta- and theta-monotonicity all "
               "exact to 1e-10")


def test_criterion_9_norm_equivalences():
    wedge = WedgeParams(math.pi)
    family = builtin_test_family(wedge)
    sp = SpaceParams(1, 2.0, 2.5, 2.0)
    coarse = make_grid(-12.0, 12.0, 256, 48, wedge)
    fine = make_grid(-12.0, 12.0, 512, 96, wedge)
    reports, s_coarse = equivalence_report(family, sp, coarse)
    _, s_fine = equivalence_report(family, sp, fine)
    for rep in reports:
        for key, val in rep.ratios.items():
            assert math.isfinite(val) and val > 0.0, (rep.field_name, key)
    for key in s_coarse:
        for end in ("min", "max"):
            a, b = s_coarse[key][end], s_fine[key][end]
            assert abs(a - b) / abs(b) <= 0.10, (key, end)

    sp0 = SpaceParams(0, 2.0, 2.4, 1.9)
    worst = 0.0
    for u in family:
        ratio = norm_mellin(u, sp0, coarse) / norm_polar(u, sp0, coarse)
        worst = max(worst, abs(ratio - 1.0))
        assert abs(ratio - 1.0) <= 1e-6, u.name

    swaps = [rep.values["dyadic"] / rep.values["dyadic_alt"] for rep in reports]
    assert all(1e-2 <= s <= 1e2 for s in swaps)
    _report(9, f"pairwise spreads stable within 10%; gamma=0 polar-vs-mellin "
               f"off by <= {worst:.1e}; resolution swap ratios in "
               f"[{min(swaps):.3f}, {max(swaps):.3f}]")


def test_criterion_10_apriori_bound():
    triples = ((math.pi, 2.0, 2.0), (math.pi / 2, 2.5, 2.2),
               (1.5 * math.pi, 1.5, 2.4))
    summary = []
    for kappa, Theta, theta in triples:
        wedge = WedgeParams(kappa)
        data = [manufactured_pair(wedge, sigma=1.0, mode=1)[1],
                manufactured_pair(wedge, sigma=0.8, mode=2)[1],
                annulus_bump(wedge)]
        maxima = []
        for n_s, n_phi in ((256, 48), (512, 96)):
            grid = make_grid(-12.0, 12.0, n_s, n_phi, wedge)
            pp = PoissonParams(wedge, Theta, theta, grid, n_modes=24)
            ratios = [solve_poisson(f, pp, probe_corner=False)[1].apriori_ratio
                      for f in data]
            assert all(math.isfinite(r) for r in ratios)
            maxima.append(max(ratios))
        assert abs(maxima[0] - maxima[1]) / maxima[1] <= 0.15, (kappa, maxima)
        summary.append((kappa, maxima[1]))

    # uniqueness probe: zero datum must return the zero solution
    wedge = WedgeParams(math.pi)
    grid = make_grid(-10.0, 10.0, 128, 32, wedge)
    z = lambda t, o=0: np.zeros_like(np.asarray(t, dtype=float))
    zero = SeparableField("zero", z, z, max_order=0)
    u0, rep0 = solve_poisson(zero, PoissonParams(wedge, 2.0, 2.0, grid,
                                                 n_modes=16),
                             probe_corner=False)
    assert np.max(np.abs(u0.values)) <= 1e-12
    assert rep0.apriori_ratio == 0.0
    _report(10, "a-priori maxima per (kappa,Theta,theta) " + ", ".join(
        f"({k:.3f}: {m:.3f})" for k, m in summary) + "; zero datum -> zero")


def test_criterion_11_polar_calculus():
    wedge = WedgeParams(math.pi)
    family = builtin_test_family(wedge)
    table = build_t_table(2)
    rng = np.random.default_rng(11)

    def cart_value(field, xx, yy):
        r = math.hypot(xx, yy)
        phi = math.atan2(yy, xx) % (2.0 * math.pi)
        return complex(field.polar_derivative(r, phi, 0, 0))

    worst = 0.0
    for f in family:
        for alpha in ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2)):
            for _ in range(6):
                r = float(rng.uniform(0.8, 1.6))
                phi = float(rng.uniform(0.4, 2.6))
                x, y = r * math.cos(phi), r * math.sin(phi)
                got = complex(cart_derivative_via_table(f, alpha, r, phi, table))
                h = 1e-5 if sum(alpha) == 1 else 1e-4
                if alpha == (1, 0):
                    want = (cart_value(f, x + h, y) - cart_value(f, x - h, y)) / (2 * h)
                elif alpha == (0, 1):
                    want = (cart_value(f, x, y + h) - cart_value(f, x, y - h)) / (2 * h)
                elif alpha == (2, 0):
                    want = (cart_value(f, x + h, y) - 2 * cart_value(f, x, y)
                            + cart_value(f, x - h, y)) / h**2
                elif alpha == (0, 2):
                    want = (cart_value(f, x, y + h) - 2 * cart_value(f, x, y)
                            + cart_value(f, x, y - h)) / h**2
                else:
                    want = (cart_value(f, x + h, y + h) - cart_value(f, x + h, y - h)
                            - cart_value(f, x - h, y + h)
                            + cart_value(f, x - h, y - h)) / (4 * h**2)
                err = abs(got - want) / max(abs(want), 1.0)
                worst = max(worst, err)
                assert err <= 1e-5, (f.name, alpha)

    grid = make_grid(-8.0, 8.0, 128, 32, wedge)
    v1 = sample(family[0], grid).values
    v2 = sample(family[3], grid).values
    phi = grid.phi_nodes[None, :]
    w1 = np.cos(2 * phi) * v1 - np.sin(2 * phi) * v2
    w2 = np.sin(2 * phi) * v1 + np.cos(2 * phi) * v2
    sp = SpaceParams(0, 2.0, 2.3, 1.8)
    before = norm_integral_vector([v1, v2], sp, grid)
    after = norm_integral_vector([w1, w2], sp, grid)
    rot_gap = abs(after - before) / before
    assert rot_gap <= 1e-12
    _report(11, f"table-vs-FD worst rel error {worst:.1e} (<=1e-5); "
                f"rotation-invariance gap {rot_gap:.1e} (<=1e-12)")
