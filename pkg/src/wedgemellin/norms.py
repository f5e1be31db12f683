"""The four equivalent norms of the mixed-weight spaces on the wedge.

For integer smoothness gamma in {0, 1, 2} the same space carries

  * a dyadic norm (resolution of unity, rescaled single-weight pieces),
  * an integral norm (boundary-distance compensated derivatives against
    the mixed weight),
  * a polar norm (radial direct integral of weighted interval norms),
  * a Mellin norm for p = 2 (contour integral of interval norms of the
    transform).

The first two are genuinely different functionals and agree only up to
equivalence constants, which this module reports but never pins.  The
polar and Mellin norms are built so that at gamma = 0 they reproduce the
integral norm exactly (same angular weight, Parseval in the radius).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, ConfigError, DomainError, IntegrationError
from .fields import AnalyticField, PolarGrid, gauss_legendre_rule
from .geometry import ResolutionOfUnity, WedgeParams, mu
from .mellin import _forward_array, contour_for_grid
from .polar_calculus import TTable, build_t_table, cart_derivative_via_table

_TABLE_CACHE: dict = {}


def _table(order: int) -> TTable:
    if order not in _TABLE_CACHE:
        _TABLE_CACHE[order] = build_t_table(max(order, 1))
    return _TABLE_CACHE[order]


@dataclass(frozen=True)
class SpaceParams:
    """Identifies a space: smoothness gamma, integrability p, weights (Theta, theta)."""

    gamma: int
    p: float
    Theta: float
    theta: float

    def __post_init__(self):
        if self.gamma not in (0, 1, 2):
            raise ConfigError(f"gamma must be one of 0, 1, 2; got {self.gamma}")
        if not self.p > 1.0 or not math.isfinite(self.p):
            raise ConfigError(f"p must lie in (1, inf), got {self.p}")


def weight_mixed(r, phi, Theta: float, theta: float, wedge: WedgeParams):
    """Mixed weight r^(theta-2) * sin(mu(phi))^(Theta-2) at interior points."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("weight undefined at the vertex")
    return r ** (theta - 2.0) * np.sin(mu(phi, wedge)) ** (Theta - 2.0)


# ---------------------------------------------------------------------------
# 1D interval norms.
# ---------------------------------------------------------------------------

def _interval_distance(phi, wedge: WedgeParams, kind: str):
    if kind == "exact":
        return np.minimum(phi, wedge.kappa - phi)
    if kind == "sine":
        return np.sin(np.minimum(0.5 * np.pi, np.minimum(phi, wedge.kappa - phi)))
    raise ConfigError(f"unknown interval distance kind {kind!r}")


def norm_1d_interval(profile, gamma: int, p: float, Theta: float,
                     wedge: WedgeParams, rule=None, rho: str = "exact") -> float:
    """Weighted interval norm (sum_k int |rho^k d^k v|^p rho^(Theta-1) dphi)^(1/p).

    ``profile(phi, order)`` must supply derivatives up to ``gamma``.  The
    distance function defaults to the exact min(phi, kappa - phi).
    """
    if rule is None:
        rule = gauss_legendre_rule(0.0, wedge.kappa, 64)
    nodes, weights = rule
    rho_vals = _interval_distance(nodes, wedge, rho)
    derivs = [np.asarray(profile(nodes, k)) for k in range(gamma + 1)]
    return _interval_norm_from_samples(derivs, p, Theta, weights, rho_vals)


def _interval_norm_from_samples(derivs, p, Theta, weights, rho_vals) -> float:
    total = 0.0
    for k, d in enumerate(derivs):
        integrand = np.abs(rho_vals**k * d) ** p * rho_vals ** (Theta - 1.0)
        total += float(np.real(integrand @ weights))
    return total ** (1.0 / p)


def _interval_norm_p_rows(derivs, p, Theta, weights, rho_vals):
    """Row-wise p-th power of the interval norm for (n_s, n_phi) sample stacks."""
    total = 0.0
    for k, d in enumerate(derivs):
        integrand = np.abs(rho_vals[None, :] ** k * d) ** p * rho_vals[None, :] ** (Theta - 1.0)
        total = total + integrand @ weights
    return total


# ---------------------------------------------------------------------------
# Integral norm (Cartesian derivatives against the mixed weight).
# ---------------------------------------------------------------------------

def _multi_indices(order: int):
    return [(a1, a2) for total in range(order + 1)
            for a1 in range(total + 1) for a2 in (total - a1,)]


def norm_integral(fieldlike, sp: SpaceParams, grid: PolarGrid) -> float:
    """(sum_{|a|<=gamma} int |rho_D^{|a|} D^a u|^p w dx)^{1/p} by tensor quadrature."""
    S, PHI, R = grid.meshes()
    table = _table(sp.gamma)
    sinmu = np.sin(mu(grid.phi_nodes, grid.wedge))[None, :]
    w = R ** (sp.theta - 2.0) * sinmu ** (sp.Theta - 2.0)
    rho_d = R * sinmu
    total = 0.0
    for alpha in _multi_indices(sp.gamma):
        order = sum(alpha)
        d = cart_derivative_via_table(fieldlike, alpha, R, PHI, table)
        summand = np.abs(rho_d**order * d) ** sp.p * w * np.exp(2.0 * S)
        if not np.all(np.isfinite(summand)):
            bad = np.argwhere(~np.isfinite(summand))[0]
            raise IntegrationError(
                f"norm integrand overflowed at s={grid.s_nodes[bad[0]]!r}, "
                f"phi={grid.phi_nodes[bad[1]]!r}, alpha={alpha}")
        total += float(grid.delta_s * np.sum(summand @ grid.phi_weights))
    return total ** (1.0 / sp.p)


def norm_integral_vector(components, sp: SpaceParams, grid: PolarGrid) -> float:
    """gamma = 0 mixed-weight norm of a vector field, pointwise 2-norm inside."""
    if sp.gamma != 0:
        raise CapabilityError("vector norm implemented for gamma = 0 only")
    S, PHI, R = grid.meshes()
    sinmu = np.sin(mu(grid.phi_nodes, grid.wedge))[None, :]
    w = R ** (sp.theta - 2.0) * sinmu ** (sp.Theta - 2.0)
    mag2 = sum(np.abs(np.asarray(c, dtype=complex)) ** 2 for c in components)
    summand = mag2 ** (sp.p / 2.0) * w * np.exp(2.0 * S)
    total = float(grid.delta_s * np.sum(summand @ grid.phi_weights))
    return total ** (1.0 / sp.p)


# ---------------------------------------------------------------------------
# Polar norm (direct integral of interval norms).
# ---------------------------------------------------------------------------

def norm_polar(fieldlike, sp: SpaceParams, grid: PolarGrid) -> float:
    """(int r^(theta-1) sum_j ||(r D_r)^j u(r,.)||^p_{H^{gamma-j}(I)} dr)^{1/p}.

    The interval norms use the sine regularized distance so the gamma = 0
    value coincides exactly with the integral norm.
    """
    S, PHI, R = grid.meshes()
    rho_vals = _interval_distance(grid.phi_nodes, grid.wedge, "sine")
    radial_weight = np.exp(sp.theta * grid.s_nodes)
    total = 0.0
    for j in range(sp.gamma + 1):
        derivs = [fieldlike.polar_derivative(R, PHI, j, k)
                  for k in range(sp.gamma - j + 1)]
        rows = _interval_norm_p_rows(derivs, sp.p, sp.Theta - 1.0 + j * sp.p,
                                     grid.phi_weights, rho_vals)
        total += float(grid.delta_s * np.sum(radial_weight * rows))
    return total ** (1.0 / sp.p)


# ---------------------------------------------------------------------------
# Dyadic norm (resolution of unity).
# ---------------------------------------------------------------------------

class _RadialFieldAdapter:
    """Wraps a radial profile with derivatives as an AnalyticField."""

    max_order = 2
    name = "radial"

    def __init__(self, fn):
        self.fn = fn  # fn(r, order) -> d^order/dr^order

    def polar_derivative(self, r, phi, j, k):
        if k > 0:
            return np.zeros(np.broadcast(r, phi).shape)
        r = np.asarray(r, dtype=float)
        # (r D_r)^j from plain radial derivatives: rDr = r d/dr,
        # (rDr)^2 = r d/dr + r^2 d^2/dr^2
        if j == 0:
            return self.fn(r, 0)
        if j == 1:
            return r * self.fn(r, 1)
        if j == 2:
            return r * self.fn(r, 1) + r**2 * self.fn(r, 2)
        raise CapabilityError("radial adapter supplies (r D_r)^j only up to j = 2")


def norm_dyadic(fieldlike, sp: SpaceParams, grid: PolarGrid,
                res: ResolutionOfUnity | None = None) -> float:
    """Dyadic norm: sum_nu c^(nu theta) ||(zeta_nu u)(c^nu .)||^p with the
    single-weight norm evaluated in its weighted-integral form.

    Rescaling by c^nu is carried out analytically (change of variables), so
    every piece is integrated on the master grid.
    """
    res = res or ResolutionOfUnity()
    c = res.scale_base
    S, PHI, R = grid.meshes()
    table = _table(sp.gamma)
    sinmu = np.sin(mu(grid.phi_nodes, grid.wedge))[None, :]
    rho_d = R * sinmu
    measure = np.exp(2.0 * S) * grid.delta_s
    alphas = _multi_indices(sp.gamma)

    # Cartesian derivatives of u, computed once on the full mesh.
    du = {}
    for alpha in alphas:
        for b1 in range(alpha[0] + 1):
            for b2 in range(alpha[1] + 1):
                key = (b1, b2)
                if key not in du:
                    du[key] = np.asarray(
                        cart_derivative_via_table(fieldlike, key, R, PHI, table),
                        dtype=complex)

    total = 0.0
    from math import comb
    r_min, r_max = float(grid.r_nodes[0]), float(grid.r_nodes[-1])
    for nu in res.index_range(r_min, r_max):
        lo, hi = res.support(nu)
        rows = np.nonzero((grid.r_nodes > lo) & (grid.r_nodes < hi))[0]
        if rows.size == 0:
            continue
        sl = slice(rows[0], rows[-1] + 1)
        zeta = _RadialFieldAdapter(lambda r, order, nu=nu: res.zeta(nu, r, order))
        dz = {key: np.asarray(cart_derivative_via_table(zeta, key, R[sl], PHI[sl], table),
                              dtype=complex)
              for key in du}
        piece = 0.0
        for alpha in alphas:
            a1, a2 = alpha
            leib = 0.0
            for b1 in range(a1 + 1):
                for b2 in range(a2 + 1):
                    w = comb(a1, b1) * comb(a2, b2)
                    leib = leib + w * dz[(b1, b2)] * du[(a1 - b1, a2 - b2)][sl]
            summand = (np.abs(rho_d[sl] ** sum(alpha) * leib) ** sp.p
                       * rho_d[sl] ** (sp.Theta - 2.0) * measure[sl])
            piece += float(np.sum(summand @ grid.phi_weights))
        total += c ** (nu * (sp.theta - sp.Theta)) * piece
    return total ** (1.0 / sp.p)


def dyadic_mass_by_index(fieldlike, sp: SpaceParams, grid: PolarGrid,
                         res: ResolutionOfUnity | None = None) -> dict:
    """Per-nu contributions to the dyadic norm (support bookkeeping aid)."""
    res = res or ResolutionOfUnity()
    out = {}
    S, PHI, R = grid.meshes()
    vals = np.asarray(fieldlike.polar_derivative(R, PHI, 0, 0), dtype=complex)
    sinmu = np.sin(mu(grid.phi_nodes, grid.wedge))[None, :]
    measure = np.exp(2.0 * S) * grid.delta_s
    for nu in res.index_range(float(grid.r_nodes[0]), float(grid.r_nodes[-1])):
        z = res.zeta(nu, R)
        summand = np.abs(z * vals) ** sp.p * sinmu ** (sp.Theta - 2.0) * measure
        out[nu] = float(np.sum(summand @ grid.phi_weights))
    return out


# ---------------------------------------------------------------------------
# Mellin norm (p = 2 only).
# ---------------------------------------------------------------------------

def norm_mellin(fieldlike, sp: SpaceParams, grid: PolarGrid) -> float:
    """Contour-sum norm of the Mellin transform on Re(lambda) = -theta/2.

    value^2 = 1/(2 pi) sum_j int |lambda|^{2j}
              ||Mu(lambda,.)||^2_{H^{gamma-j}_{2,Theta-1+2j}(I)} dt.
    """
    if sp.p != 2:
        raise CapabilityError("the Mellin norm is defined for p = 2 only")
    c = -sp.theta / 2.0
    S, PHI, R = grid.meshes()
    s0 = float(grid.s_nodes[0])
    transforms = []
    for k in range(sp.gamma + 1):
        samples = np.asarray(fieldlike.polar_derivative(R, PHI, 0, k), dtype=complex)
        transforms.append(_forward_array(samples, s0, grid.delta_s, c))
    lam = contour_for_grid(grid, c).lam
    rho_vals = _interval_distance(grid.phi_nodes, grid.wedge, "sine")
    total = 0.0
    for j in range(sp.gamma + 1):
        rows = _interval_norm_p_rows(transforms[: sp.gamma - j + 1], 2.0,
                                     sp.Theta - 1.0 + 2.0 * j,
                                     grid.phi_weights, rho_vals)
        total += float(np.sum(np.abs(lam) ** (2 * j) * rows))
    total /= grid.n_s * grid.delta_s   # dt/(2 pi) with dt = 2 pi/(n ds)
    return math.sqrt(total)


# ---------------------------------------------------------------------------
# Equivalence reporting.
# ---------------------------------------------------------------------------

@dataclass
class NormReport:
    """All norm values for one field, plus every pairwise ratio."""

    field_name: str
    sp: SpaceParams
    values: dict
    grid_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, v in self.values.items():
            if v < 0.0:
                raise ConfigError(f"norm {name} negative: {v}")

    @property
    def ratios(self) -> dict:
        names = [n for n, v in self.values.items() if v is not None]
        out = {}
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                if self.values[b] != 0.0:
                    out[f"{a}/{b}"] = self.values[a] / self.values[b]
        return out


def equivalence_report(family, sp: SpaceParams, grid: PolarGrid,
                       res: ResolutionOfUnity | None = None,
                       res_alt: ResolutionOfUnity | None = None):
    """Evaluate all norms for every field; summarize pairwise ratio spreads.

    A second, independently parameterized resolution of unity is always run
    through the dyadic norm; the swap ratio is part of the summary.
    """
    if not family:
        raise ConfigError("field family must not be empty")
    res = res or ResolutionOfUnity()
    res_alt = res_alt or ResolutionOfUnity(scale_base=2.0)
    reports = []
    for f in family:
        values = {
            "dyadic": norm_dyadic(f, sp, grid, res),
            "integral": norm_integral(f, sp, grid),
            "polar": norm_polar(f, sp, grid),
        }
        values["mellin"] = norm_mellin(f, sp, grid) if sp.p == 2 else None
        values["dyadic_alt"] = norm_dyadic(f, sp, grid, res_alt)
        reports.append(NormReport(f.name, sp, values,
                                  {"n_s": grid.n_s, "n_phi": grid.n_phi}))
    summary = {}
    keys = sorted({k for rep in reports for k in rep.ratios})
    for k in keys:
        vals = [rep.ratios[k] for rep in reports if k in rep.ratios]
        summary[k] = {"min": min(vals), "max": max(vals)}
    return reports, summary


def write_equivalence_csv(path, reports, seed=None) -> None:
    """CSV schema: field_name, gamma, p, Theta, theta, dyadic, integral,
    polar, mellin, ratio_max, ratio_min."""
    with open(path, "w", newline="\n") as fh:
        if seed is not None:
            fh.write(f"# seed={seed}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["field_name", "gamma", "p", "Theta", "theta",
                         "dyadic", "integral", "polar", "mellin",
                         "ratio_max", "ratio_min"])
        for rep in reports:
            ratios = rep.ratios.values()
            writer.writerow([
                rep.field_name, rep.sp.gamma, repr(rep.sp.p), repr(rep.sp.Theta),
                repr(rep.sp.theta), repr(rep.values["dyadic"]),
                repr(rep.values["integral"]), repr(rep.values["polar"]),
                "" if rep.values.get("mellin") is None else repr(rep.values["mellin"]),
                repr(max(ratios)), repr(min(ratios)),
            ])
