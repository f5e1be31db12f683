import math

import numpy as np
import pytest
import scipy.integrate

from wedgemellin import (ConfigError, GridField, contour_for_grid,
                         gaussian_bump, make_grid, mellin_forward,
                         mellin_forward_profile, mellin_inverse,
                         multiplier_check, parseval_check)


@pytest.fixture(scope="module")
def grid(wedge_pi):
    return make_grid(-12.0, 12.0, 4096, 8, wedge_pi)


@pytest.fixture(scope="module")
def wide_grid(wedge_pi):
    # reaches far enough down for e^{-r} weighted against e^{s} kernels
    return make_grid(-30.0, 6.0, 4096, 8, wedge_pi)


def bump_profile(sigma=1.0, center=0.0):
    g = gaussian_bump(center, sigma)
    return lambda r: g(np.log(np.asarray(r, dtype=float)))


class TestGammaConvention:
    def test_gamma_values_against_quadrature(self, wide_grid):
        prof = np.exp(-np.exp(wide_grid.s_nodes)).astype(complex)
        for c, gamma_value in ((-1.0, 1.0), (-2.0, 1.0), (-3.0, 2.0)):
            got = mellin_forward_profile(prof, wide_grid, c)[0]
            oracle = scipy.integrate.quad(
                lambda r: r ** (-c - 1) * math.exp(-r), 0.0, np.inf)[0]
            assert oracle == pytest.approx(gamma_value, rel=1e-10)
            assert abs(got - oracle) / oracle <= 1e-8

    def test_linearity_exact(self, grid, rng):
        u = (rng.normal(size=grid.n_s) + 1j * rng.normal(size=grid.n_s))
        v = (rng.normal(size=grid.n_s) + 1j * rng.normal(size=grid.n_s))
        lhs = mellin_forward_profile(2.0 * u + 0.5 * v, grid, 0.0)
        rhs = 2.0 * mellin_forward_profile(u, grid, 0.0) \
            + 0.5 * mellin_forward_profile(v, grid, 0.0)
        assert np.allclose(lhs, rhs, rtol=1e-13, atol=1e-12)


class TestRoundTrip:
    @pytest.mark.parametrize("c", [0.0, -1.0, 0.5])
    def test_bump_round_trip(self, grid, c):
        vals = np.broadcast_to(gaussian_bump(0.0, 1.0)(grid.s_nodes)[:, None],
                               (grid.n_s, grid.n_phi)).astype(complex).copy()
        gf = GridField(grid, vals)
        mf = mellin_forward(gf, c)
        assert not mf.warnings
        back = mellin_inverse(mf)
        rel = np.linalg.norm(back.values - vals) / np.linalg.norm(vals)
        assert rel <= 1e-10

    def test_zero_field(self, grid):
        gf = GridField(grid, np.zeros((grid.n_s, grid.n_phi), dtype=complex))
        mf = mellin_forward(gf, -0.7)
        assert np.all(mf.values == 0.0)
        assert np.all(mellin_inverse(mf).values == 0.0)

    def test_scaling_identity(self, grid):
        # forward(u(a .))(lambda) = a^lambda forward(u)(lambda)
        a = 2.0
        g = gaussian_bump(0.0, 1.0)
        f1 = mellin_forward_profile(g(grid.s_nodes).astype(complex), grid, 0.0)
        fa = mellin_forward_profile(g(grid.s_nodes + math.log(a)).astype(complex),
                                    grid, 0.0)
        lam = contour_for_grid(grid, 0.0).lam
        mask = np.abs(f1) > 1e-6 * np.max(np.abs(f1))
        rel = np.abs(fa[mask] - a ** lam[mask] * f1[mask]) / np.abs(a ** lam[mask] * f1[mask])
        assert np.max(rel) <= 1e-8

    def test_truncation_warning(self, grid):
        vals = np.broadcast_to(np.exp(-np.exp(grid.s_nodes))[:, None],
                               (grid.n_s, grid.n_phi)).astype(complex).copy()
        mf = mellin_forward(GridField(grid, vals), -1.0)
        assert mf.warnings, "slowly decaying weighted data should warn"

    def test_contour_grid_mismatch(self, grid, wedge_pi):
        other = make_grid(-12.0, 12.0, 2048, 8, wedge_pi)
        vals = np.zeros((grid.n_s, grid.n_phi), dtype=complex)
        mf = mellin_forward(GridField(grid, vals), 0.0)
        from wedgemellin.mellin import MellinField
        with pytest.raises(ConfigError):
            mellin_inverse(MellinField(mf.contour, mf.values, other))


class TestParseval:
    def test_gaussian_bump(self, grid):
        u = bump_profile()
        lhs, rhs, gap = parseval_check(u, u, 0.0, grid)
        assert lhs.real == pytest.approx(math.sqrt(math.pi), rel=1e-10)
        assert gap <= 1e-8

    def test_disjoint_supports(self, grid):
        u = bump_profile(sigma=0.4, center=-4.0)
        v = bump_profile(sigma=0.4, center=4.0)
        lhs, rhs, _ = parseval_check(u, v, 0.0, grid)
        su = np.abs(mellin_forward_profile(u(np.exp(grid.s_nodes)), grid, 0.0))
        sv = np.abs(mellin_forward_profile(v(np.exp(grid.s_nodes)), grid, 0.0))
        assert abs(lhs) <= 1e-14
        assert abs(rhs) <= 1e-10 * np.linalg.norm(su) * np.linalg.norm(sv)

    def test_beta_shift_consistency(self, grid):
        beta = 0.35
        u = bump_profile(0.8, 0.5)
        v = bump_profile(0.9, -0.3)
        lhs1, rhs1, _ = parseval_check(u, v, beta, grid)
        shifted_u = lambda r: r**beta * u(r)
        shifted_v = lambda r: r**beta * v(r)
        lhs0, rhs0, _ = parseval_check(shifted_u, shifted_v, 0.0, grid)
        assert abs(lhs1 - lhs0) / abs(lhs0) <= 1e-9
        assert abs(rhs1 - rhs0) / abs(rhs0) <= 1e-9

    def test_refinement_rate_envelope(self, wedge_pi):
        # both sides share the samples, so the gap stays under a quadratic
        # envelope in the step (here it sits at rounding level throughout)
        u = bump_profile(0.1)
        for n in (128, 256, 512):
            g = make_grid(-8.0, 8.0, n, 8, wedge_pi)
            gap = parseval_check(u, u, 0.0, g)[2]
            assert gap <= 1e-2 * g.delta_s**2 + 1e-14


class TestMultiplier:
    def test_exponential_profile(self, wide_grid):
        # r D_r e^{-r} = -r e^{-r}; contour c = -1 pairs with beta = 1
        dev = multiplier_check(lambda r: np.exp(-r), 1.0, wide_grid,
                               du=lambda r: -r * np.exp(-r))
        assert dev <= 1e-7

    def test_bump_with_fd_derivative(self, grid):
        dev = multiplier_check(bump_profile(), 0.0, grid)
        assert dev <= 1e-7

    def test_zero_profile(self, grid):
        dev = multiplier_check(lambda r: np.zeros_like(np.asarray(r)), 0.0, grid)
        assert dev == 0.0


class TestContourLayout:
    def test_frequency_spacing_and_symmetry(self, grid):
        from wedgemellin import contour_for_grid
        contour = contour_for_grid(grid, -0.5)
        t = np.sort(contour.t)
        spacing = 2.0 * math.pi / (grid.n_s * grid.delta_s)
        assert np.allclose(np.diff(t), spacing, rtol=1e-12)
        # standard FFT set: symmetric about zero except the single Nyquist node
        assert np.count_nonzero(t == 0.0) == 1
        positive = t[t > 0]
        negative = -t[t < 0]
        assert np.allclose(np.sort(positive), np.sort(negative)[:-1] if
                           len(negative) > len(positive) else np.sort(negative))

    def test_csv_dump(self, wedge_pi, tmp_path):
        g = make_grid(-4.0, 4.0, 16, 4, wedge_pi)
        vals = np.broadcast_to(gaussian_bump(0.0, 1.0)(g.s_nodes)[:, None],
                               (16, 4)).astype(complex).copy()
        mf = mellin_forward(GridField(g, vals), -0.5)
        path = tmp_path / "mellin.csv"
        mf.save_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# c=-0.5")
        assert lines[1] == "t,phi,re,im"
        assert len(lines) == 2 + 16 * 4
