"""Zero-Dirichlet Poisson solver on the wedge via Mellin factorization.

The Laplacian factorizes through polar coordinates and the Mellin
transform: multiply the datum by r^2, transform along the contour
Re(lambda) = (2 - theta)/2, solve the interval Helmholtz problem
(lambda^2 + D_phi^2) v = F per contour node, and transform back.  The
interval resolvent is diagonal in the Dirichlet sine basis with
eigenvalues (n pi / kappa)^2, which is also where the admissibility
condition places the forbidden contour offsets.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (AdmissibilityError, CapabilityError, ConfigError,
                     InconsistencyError, ProbeError, SingularityError)
from .fields import AnalyticField, GridField, PolarGrid, gauss_legendre_rule, sample
from .geometry import WedgeParams
from .mellin import mellin_forward, mellin_inverse, MellinField, contour_for_grid
from .norms import SpaceParams, norm_integral, norm_polar, _interval_norm_from_samples, _interval_distance

SPECTRUM_HARD_TOL = 1e-9
SPECTRUM_WARN_TOL = 1e-3


@dataclass(frozen=True)
class PoissonParams:
    """Everything a solve needs: wedge, weights, smoothness, discretization."""

    wedge: WedgeParams
    Theta: float
    theta: float
    grid: PolarGrid
    gamma: int = 0
    n_modes: int = 64

    def __post_init__(self):
        if self.gamma not in (0, 1, 2):
            raise ConfigError(f"gamma must be 0, 1 or 2, got {self.gamma}")
        if self.n_modes < 1:
            raise ConfigError("n_modes must be positive")

    @property
    def contour_offset(self) -> float:
        return (2.0 - self.theta) / 2.0


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    reason: str | None = None
    offending_n: int | None = None
    warnings: tuple = ()


def admissible(pp: PoissonParams) -> Admissibility:
    """Check 1 < Theta < 3 and (theta-2)/2 off the set {+-n pi/kappa}."""
    if not (1.0 < pp.Theta < 3.0):
        return Admissibility(False, f"Theta={pp.Theta} outside the open interval (1, 3)")
    shift = abs(pp.theta - 2.0) / 2.0
    step = pp.wedge.exponent
    n_near = int(round(shift / step))
    warnings = []
    if n_near >= 1:
        dist = abs(shift - n_near * step)
        if dist <= SPECTRUM_HARD_TOL:
            return Admissibility(
                False,
                f"(theta-2)/2 = {0.5 * (pp.theta - 2.0)} hits the forbidden value "
                f"n*pi/kappa with n={n_near}", offending_n=n_near)
        if dist <= SPECTRUM_WARN_TOL:
            warnings.append(
                f"(theta-2)/2 within {dist:.2e} of the forbidden value n={n_near}")
    return Admissibility(True, warnings=tuple(warnings))


def dirichlet_spectrum(wedge: WedgeParams, n_max: int) -> np.ndarray:
    """Eigenvalues (n pi / kappa)^2 of the interval Dirichlet Laplacian, n = 1..n_max."""
    if n_max < 1:
        raise ConfigError("n_max must be at least 1")
    n = np.arange(1, n_max + 1)
    return (n * wedge.exponent) ** 2


def fd_dirichlet_eigenvalues(wedge: WedgeParams, m: int, n_eigs: int) -> np.ndarray:
    """Lowest eigenvalues of the 3-point FD Dirichlet matrix on (0, kappa)."""
    h = wedge.kappa / (m + 1)
    d = np.full(m, 2.0 / h**2)
    e = np.full(m - 1, -1.0 / h**2)
    vals = scipy.linalg.eigh_tridiagonal(d, e, select="i",
                                         select_range=(0, n_eigs - 1))[0]
    return vals


# ---------------------------------------------------------------------------
# 1D resolvent: sine-spectral, finite differences, Green's function.
# ---------------------------------------------------------------------------

def _spectrum_guard(lam: complex, wedge: WedgeParams, n_scan: int) -> None:
    mu_n = dirichlet_spectrum(wedge, n_scan)
    dist = np.abs(lam * lam - mu_n)
    k = int(np.argmin(dist))
    if dist[k] <= SPECTRUM_HARD_TOL:
        raise SingularityError(
            f"lambda^2 = {lam * lam} within {dist[k]:.2e} of eigenvalue n={k + 1}")


def _sinpi(y: np.ndarray) -> np.ndarray:
    """sin(pi*y), exactly zero at integer y (argument reduction)."""
    y = np.asarray(y, dtype=float)
    n = np.round(y)
    sign = np.where(np.mod(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.sin(np.pi * (y - n))


def _cospi(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    n = np.round(y)
    sign = np.where(np.mod(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.cos(np.pi * (y - n))


def _sine_basis(wedge: WedgeParams, n_modes: int, phi: np.ndarray) -> np.ndarray:
    n = np.arange(1, n_modes + 1)
    # sin(n pi phi / kappa): evaluating at n * (phi/kappa) keeps the boundary
    # columns identically zero
    return _sinpi(np.multiply.outer(n, np.asarray(phi) / wedge.kappa))


def sine_analyze(f_vals: np.ndarray, wedge: WedgeParams, n_modes: int,
                 nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Sine coefficients by weighted projection onto the Dirichlet basis.

    Solves the (near-identity) Gram system instead of assuming discrete
    orthogonality, so band-limited data is analyzed exactly on any interior
    quadrature rule; high modes do not alias into the coefficients.
    """
    if n_modes > len(nodes):
        raise ConfigError(f"cannot resolve {n_modes} modes from {len(nodes)} angular nodes")
    basis = _sine_basis(wedge, n_modes, nodes)
    bw = basis * weights
    gram = bw @ basis.T
    return scipy.linalg.solve(gram, bw @ f_vals, assume_a="pos")


def _scaled_sin(z: np.ndarray):
    """Return (m, e) with sin(z) = m * exp(e) and |m| <= 1, e = |Im z|."""
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    ay = np.abs(y)
    damp = np.exp(-2.0 * ay)
    m = np.sin(x) * 0.5 * (1.0 + damp) + 1j * np.cos(x) * np.sign(y) * 0.5 * (1.0 - damp)
    return m, ay


def resolvent_1d(lam: complex, f, wedge: WedgeParams, method: str = "sine",
                 phi_out: np.ndarray | None = None, n_modes: int = 128,
                 n_fd: int = 1024, quad=None):
    """Solve (lambda^2 + D_phi^2) u = f on (0, kappa) with zero endpoint values.

    ``f`` is a callable of phi.  Methods:
      sine  -- diagonal division in the Dirichlet sine basis;
      fd    -- second-order tridiagonal solve on a uniform interior grid;
      green -- quadrature against the two-solution kernel, overflow-safe.
    Returns values of u at ``phi_out`` (default: the fd interior nodes).
    """
    _spectrum_guard(lam, wedge,
                    max(n_modes, int(math.ceil(abs(lam) / wedge.exponent)) + 2))
    if phi_out is None:
        h = wedge.kappa / (n_fd + 1)
        phi_out = h * np.arange(1, n_fd + 1)
    phi_out = np.asarray(phi_out, dtype=float)

    if method == "sine":
        nodes, weights = quad or gauss_legendre_rule(0.0, wedge.kappa, 256)
        fn = sine_analyze(np.asarray(f(nodes), dtype=complex), wedge, n_modes,
                          nodes, weights)
        mu_n = dirichlet_spectrum(wedge, n_modes)
        un = fn / (lam * lam - mu_n)
        return un @ _sine_basis(wedge, n_modes, phi_out)

    if method == "fd":
        h = wedge.kappa / (n_fd + 1)
        nodes = h * np.arange(1, n_fd + 1)
        band = np.zeros((3, n_fd), dtype=complex)
        band[0, 1:] = 1.0 / h**2
        band[1, :] = lam * lam - 2.0 / h**2
        band[2, :-1] = 1.0 / h**2
        u = scipy.linalg.solve_banded((1, 1), band, np.asarray(f(nodes), dtype=complex))
        if phi_out.shape == nodes.shape and np.allclose(phi_out, nodes):
            return u
        padded_phi = np.concatenate(([0.0], nodes, [wedge.kappa]))
        padded_u = np.concatenate(([0.0], u, [0.0]))
        return (np.interp(phi_out, padded_phi, padded_u.real)
                + 1j * np.interp(phi_out, padded_phi, padded_u.imag))

    if method == "green":
        return _green_apply(lam, f, wedge, phi_out)

    raise ConfigError(f"unknown resolvent method {method!r}")


def _green_apply(lam: complex, f, wedge: WedgeParams, phi_out: np.ndarray):
    """u(phi) = int G(phi, psi) f(psi) dpsi with
    G = -sin(lam phi_<) sin(lam (kappa-phi_>)) / (lam sin(lam kappa)).

    The kernel has a kink at psi = phi, so each output point integrates the
    two smooth pieces separately; sines are evaluated in scaled form so
    large |Im lam| cannot overflow.  Below |lam| ~ 1e-8 the harmonic limit
    -phi_< (kappa - phi_>)/kappa takes over.
    """
    kappa = wedge.kappa
    order = 48
    panels = max(1, int(math.ceil(abs(lam) * kappa / 40.0)))
    x0, w0 = np.polynomial.legendre.leggauss(order)
    offs = np.concatenate([k + 0.5 * (x0 + 1.0) for k in range(panels)]) / panels
    wts0 = np.tile(0.5 * w0, panels) / panels
    small = abs(lam) < 1e-8
    if not small:
        m3, e3 = _scaled_sin(np.asarray(lam * kappa))

    def piece(a_arr, b_arr, lo_is_psi):
        width = (b_arr - a_arr)[:, None]
        psi = a_arr[:, None] + offs[None, :] * width   # (n_out, panels*order)
        wts = wts0[None, :] * width
        lo = psi if lo_is_psi else phi_out[:, None]
        hi = phi_out[:, None] if lo_is_psi else psi
        if small:
            kernel = -lo * (kappa - hi) / kappa
        else:
            m1, e1 = _scaled_sin(lam * lo)
            m2, e2 = _scaled_sin(lam * (kappa - hi))
            kernel = -(m1 * m2 / (lam * m3)) * np.exp(e1 + e2 - e3)
        return np.sum(kernel * f(psi) * wts, axis=1)

    zeros = np.zeros_like(phi_out)
    return (piece(zeros, phi_out, True)
            + piece(phi_out, np.full_like(phi_out, kappa), False))


def resolvent_estimate_check(lam: complex, f, Theta: float, wedge: WedgeParams,
                             p: float = 2.0, n_modes: int = 256, rule=None) -> float:
    """Ratio of the interval resolvent estimate:
    sum_j |lam|^j ||u||_{H^{2-j}_{p,Theta-p+jp}(I)} over ||f||_{L_{p,Theta+p}(I)}.
    """
    rule = rule or gauss_legendre_rule(0.0, wedge.kappa, 256)
    nodes, weights = rule
    f_vals = np.asarray(f(nodes), dtype=complex)
    rho_vals = _interval_distance(nodes, wedge, "exact")
    rhs = _interval_norm_from_samples([f_vals], p, Theta + p, weights, rho_vals)
    if rhs == 0.0:
        return 0.0
    fn = sine_analyze(f_vals, wedge, n_modes, nodes, weights)
    mu_n = dirichlet_spectrum(wedge, n_modes)
    _spectrum_guard(lam, wedge, max(n_modes, int(abs(lam) / wedge.exponent) + 2))
    un = fn / (lam * lam - mu_n)
    freqs = np.arange(1, n_modes + 1) * wedge.exponent
    basis = _sine_basis(wedge, n_modes, nodes)
    dbasis = freqs[:, None] * np.cos(np.multiply.outer(freqs, nodes))
    d2basis = -(freqs**2)[:, None] * basis
    u0, u1, u2 = un @ basis, un @ dbasis, un @ d2basis
    lhs = 0.0
    for j, derivs in enumerate(([u0, u1, u2], [u0, u1], [u0])):
        lhs += abs(lam) ** j * _interval_norm_from_samples(
            derivs, p, Theta - p + j * p, weights, rho_vals)
    return lhs / rhs


# ---------------------------------------------------------------------------
# Full pipeline.
# ---------------------------------------------------------------------------

@dataclass
class SineSpectrum:
    """Solution coefficients in the (contour node) x (sine mode) plane."""

    coefficients: np.ndarray   # (n_s, n_modes)
    wedge: WedgeParams
    contour_c: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.coefficients)):
            raise ConfigError("sine spectrum holds non-finite coefficients")

    @property
    def n_modes(self) -> int:
        return self.coefficients.shape[1]

    def synthesize(self, phi, grid: PolarGrid, radial_power: int = 0,
                   angular_order: int = 0) -> np.ndarray:
        """Inverse-transform lambda^j * coefficients and apply D_phi^k in the
        sine basis; phi may lie anywhere in [0, kappa]."""
        from .mellin import _inverse_array

        lam = contour_for_grid(grid, self.contour_c).lam
        coeff = self.coefficients * (lam[:, None] ** radial_power)
        freqs = np.arange(1, self.n_modes + 1) * self.wedge.exponent
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        y = np.multiply.outer(np.arange(1, self.n_modes + 1), phi / self.wedge.kappa)
        cycle = [_sinpi, _cospi, lambda t: -_sinpi(t), lambda t: -_cospi(t)]
        basis = (freqs ** angular_order)[:, None] * cycle[angular_order % 4](y)
        return _inverse_array(coeff @ basis, float(grid.s_nodes[0]),
                              grid.delta_s, self.contour_c)


class SpectralSolutionField(AnalyticField):
    """AnalyticField backed by the solver's sine/Mellin representation.

    Polar derivatives are spectral: (r D_r)^j is multiplication by lambda^j
    on the contour, D_phi^k differentiates the sine basis.
    """

    max_order = 2

    def __init__(self, spectrum: SineSpectrum, grid: PolarGrid, name="solution"):
        self.spectrum = spectrum
        self.grid = grid
        self.name = name
        self._cache: dict = {}

    def polar_derivative(self, r, phi, j, k):
        if j + k > 2:
            raise CapabilityError("spectral solution supplies orders <= 2")
        key = (j, k)
        if key not in self._cache:
            self._cache[key] = self.spectrum.synthesize(
                self.grid.phi_nodes, self.grid, radial_power=j, angular_order=k)
        vals = self._cache[key]
        expect = np.broadcast(r, phi).shape
        if vals.shape != expect:
            raise CapabilityError(
                "spectral solution can only be evaluated on its own grid mesh")
        return vals


@dataclass
class SolveReport:
    """Solver diagnostics; serializes to the documented JSON schema."""

    kappa: float
    Theta: float
    theta: float
    gamma: int
    grid: dict
    norms: dict
    apriori_ratio: float | None
    residual: float | None
    corner_slope: float | None
    contour_offset: float
    warnings: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    spectrum: SineSpectrum | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.residual is not None and self.residual < 0.0:
            raise ConfigError("residual must be nonnegative")

    def to_json(self, indent=2) -> str:
        payload = {
            "kappa": self.kappa, "Theta": self.Theta, "theta": self.theta,
            "gamma": self.gamma, "grid": self.grid, "norms": self.norms,
            "apriori_ratio": self.apriori_ratio, "residual": self.residual,
            "corner_slope": self.corner_slope,
            "contour_offset": self.contour_offset,
            "warnings": list(self.warnings),
        }
        payload.update(self.extras)
        return json.dumps(payload, indent=indent)


def solve_poisson(f, pp: PoissonParams, probe_corner: bool = True):
    """Solve Delta u = f with zero Dirichlet data; return (u, SolveReport).

    ``f`` may be an AnalyticField or a GridField on pp.grid.  The returned
    solution vanishes identically on the wedge boundary by construction
    (sine synthesis).
    """
    verdict = admissible(pp)
    if not verdict.ok:
        raise AdmissibilityError(verdict.reason)
    warnings = list(verdict.warnings)
    grid = pp.grid
    if pp.n_modes > grid.n_phi:
        raise ConfigError(
            f"n_modes={pp.n_modes} cannot be resolved on n_phi={grid.n_phi} angular nodes")
    f_grid = f if isinstance(f, GridField) else sample(f, grid)
    if f_grid.grid is not grid:
        raise ConfigError("datum grid does not match the solver grid")

    S, PHI, R = grid.meshes()
    n2f = f_grid.copy_with(f_grid.values * np.exp(2.0 * S))
    c = pp.contour_offset
    F = mellin_forward(n2f, c)
    warnings.extend(F.warnings)

    # aliasing monitor: the round trip of N2 f must reproduce the samples
    denom = np.linalg.norm(n2f.values)
    if denom > 0.0:
        rt = np.linalg.norm(mellin_inverse(F).values - n2f.values) / denom
        if rt > 1e-8:
            warnings.append(f"round-trip residual on r^2 f is {rt:.2e}")

    lam = F.contour.lam
    mu_n = dirichlet_spectrum(pp.wedge, pp.n_modes)
    denoms = lam[:, None] ** 2 - mu_n[None, :]
    worst = np.min(np.abs(denoms))
    if worst <= SPECTRUM_HARD_TOL:
        k, n = np.unravel_index(int(np.argmin(np.abs(denoms))), denoms.shape)
        raise SingularityError(
            f"contour node lambda={lam[k]} within {worst:.2e} of eigenvalue n={n + 1}")
    if worst <= SPECTRUM_WARN_TOL:
        warnings.append(f"smallest resolvent denominator {worst:.2e}; "
                        "conditioning degraded near the spectrum")

    basis = _sine_basis(pp.wedge, pp.n_modes, grid.phi_nodes)
    bw = basis * grid.phi_weights
    gram = bw @ basis.T
    modes_f = scipy.linalg.solve(gram, bw @ F.values.T, assume_a="pos").T
    modes_u = modes_f / denoms
    spectrum = SineSpectrum(modes_u, pp.wedge, c)
    u_vals = modes_u @ basis
    V = MellinField(F.contour, u_vals, grid)
    u = mellin_inverse(V)

    f_for_norm = f if isinstance(f, AnalyticField) else f_grid
    norm_f = _gamma0_norm(f_for_norm, SpaceParams(0, 2.0, pp.Theta + 2.0, pp.theta + 2.0), grid)
    sol_field = SpectralSolutionField(spectrum, grid)
    sp_u = SpaceParams(2, 2.0, pp.Theta - 2.0, pp.theta - 2.0)
    norm_u = norm_polar(sol_field, sp_u, grid)

    residual = residual_check(u, f_grid, grid)
    slope = None
    if probe_corner:
        try:
            slope = corner_exponent(u)
        except ProbeError as exc:
            warnings.append(f"corner probe skipped: {exc}")
    ratio = (norm_u / norm_f) if norm_f > 0.0 else (
        0.0 if norm_u <= 1e-12 else None)
    if ratio is None:
        raise InconsistencyError("zero datum produced a nonzero solution")

    # both candidate right-hand sides of the lifting estimate (open question)
    extras = {
        "lifting_rhs_Theta": norm_polar(
            sol_field, SpaceParams(1, 2.0, pp.Theta, pp.theta - 2.0), grid),
        "lifting_rhs_Theta_minus_p": norm_polar(
            sol_field, SpaceParams(1, 2.0, pp.Theta - 2.0, pp.theta - 2.0), grid),
    }
    report = SolveReport(
        kappa=pp.wedge.kappa, Theta=pp.Theta, theta=pp.theta, gamma=pp.gamma,
        grid={"s_min": grid.s_min, "s_max": grid.s_max,
              "n_s": grid.n_s, "n_phi": grid.n_phi, "n_modes": pp.n_modes},
        norms={"f": norm_f, "u": norm_u},
        apriori_ratio=ratio, residual=residual, corner_slope=slope,
        contour_offset=c, warnings=warnings, extras=extras, spectrum=spectrum)
    return u, report


def _gamma0_norm(fieldlike, sp: SpaceParams, grid: PolarGrid) -> float:
    """gamma = 0 mixed-weight norm for analytic fields or raw grid samples."""
    if isinstance(fieldlike, AnalyticField):
        return norm_integral(fieldlike, sp, grid)
    S, PHI, R = grid.meshes()
    from .geometry import mu as _mu
    sinmu = np.sin(_mu(grid.phi_nodes, grid.wedge))[None, :]
    w = R ** (sp.theta - 2.0) * sinmu ** (sp.Theta - 2.0)
    summand = np.abs(fieldlike.values) ** sp.p * w * np.exp(2.0 * S)
    return float(grid.delta_s * np.sum(summand @ grid.phi_weights)) ** (1.0 / sp.p)


def apriori_report(f, u_or_spectrum, pp: PoissonParams) -> float:
    """Ratio ||u||_{H^2_{2,Theta-2,theta-2}} / ||f||_{L_{2,Theta+2,theta+2}}.

    The solution norm needs spectral derivatives, so pass either the
    SineSpectrum or a SolveReport carrying one.
    """
    spectrum = u_or_spectrum.spectrum if isinstance(u_or_spectrum, SolveReport) \
        else u_or_spectrum
    if not isinstance(spectrum, SineSpectrum):
        raise ConfigError("apriori_report needs the solver's sine spectrum")
    grid = pp.grid
    rhs = _gamma0_norm(f, SpaceParams(0, 2.0, pp.Theta + 2.0, pp.theta + 2.0), grid)
    sol_field = SpectralSolutionField(spectrum, grid)
    lhs = norm_polar(sol_field, SpaceParams(2, 2.0, pp.Theta - 2.0, pp.theta - 2.0), grid)
    if rhs == 0.0:
        if lhs > 1e-12:
            raise InconsistencyError("zero datum with nonzero solution norm")
        return 0.0
    return lhs / rhs


def _fornberg_weights(x0: float, nodes: np.ndarray, m: int) -> np.ndarray:
    """FD weights for the m-th derivative at x0 from arbitrary nodes
    (Fornberg's recursion)."""
    n = len(nodes)
    c = np.zeros((n, m + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def residual_check(u: GridField, f: GridField, grid: PolarGrid,
                   stencil: int = 5) -> float:
    """Relative residual of e^{-2s} (D_s^2 + D_phi^2) u - f on interior nodes.

    Finite differences only: centered second order in s, Fornberg stencils
    on the nonuniform angular nodes.  Independent of the spectral solver.
    """
    uv = u.values
    n_s, n_phi = uv.shape
    ds2 = (uv[:-2, :] - 2.0 * uv[1:-1, :] + uv[2:, :]) / grid.delta_s**2

    half = stencil // 2
    dphi2 = np.zeros_like(uv)
    nodes = grid.phi_nodes
    for q in range(n_phi):
        lo = min(max(q - half, 0), n_phi - stencil)
        w = _fornberg_weights(nodes[q], nodes[lo:lo + stencil], 2)
        dphi2[:, q] = uv[:, lo:lo + stencil] @ w

    s = grid.s_nodes[1:-1, None]
    resid = np.exp(-2.0 * s) * (ds2 + dphi2[1:-1, :]) - f.values[1:-1, :]
    # weighted L2 over the interior, measure e^{2s} ds dphi
    wgt = np.exp(2.0 * s) * grid.phi_weights[None, :] * grid.delta_s
    num = math.sqrt(float(np.sum(np.abs(resid) ** 2 * wgt)))
    den = math.sqrt(float(np.sum(np.abs(f.values[1:-1, :]) ** 2 * wgt)))
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / den


def corner_exponent(u: GridField, signal_floor: float = 1e-12,
                    min_rows: int = 6) -> float:
    """Least-squares slope of log ||u(r, .)||_{L2(I)} against log r over the
    smallest decade of radii carrying signal above the floor."""
    grid = u.grid
    rows = np.sqrt(np.abs(u.values) ** 2 @ grid.phi_weights)
    live = np.nonzero(rows > signal_floor)[0]
    if live.size < min_rows:
        raise ProbeError(f"only {live.size} rows above the signal floor {signal_floor:.0e}")
    s = grid.s_nodes
    s_lo = s[live[0]]
    window = live[(s[live] >= s_lo) & (s[live] <= s_lo + math.log(10.0))]
    if window.size < min_rows:
        raise ProbeError("fewer than {} rows inside the fit decade".format(min_rows))
    slope = np.polyfit(s[window], np.log(rows[window]), 1)[0]
    return float(slope)
