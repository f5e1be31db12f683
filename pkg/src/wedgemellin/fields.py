"""Function representations on the wedge and tensor quadrature.

Functions live on a log-polar tensor grid: uniform cell midpoints in
s = log r (FFT friendly) times a composite Gauss-Legendre rule in the
angle.  Analytic fields additionally supply the polar derivatives
(r D_r)^j D_phi^k needed by the norm and solver layers.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, IntegrationError, SamplingError, SchemaError
from .geometry import WedgeParams, smoothstep


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def gauss_legendre_rule(a: float, b: float, n: int, panel_order: int = 8):
    """Composite Gauss-Legendre rule with n nodes on (a, b).

    Uses panels of ``panel_order`` nodes when it divides n, otherwise a
    single panel of order n.  Nodes are strictly interior, weights positive.
    """
    if n < 2:
        raise ConfigError(f"quadrature rule needs at least 2 nodes, got n={n}")
    q = panel_order if (n % panel_order == 0) else n
    panels = n // q
    x0, w0 = np.polynomial.legendre.leggauss(q)
    width = (b - a) / panels
    nodes = np.concatenate(
        [a + (k + 0.5 * (x0 + 1.0)) * width for k in range(panels)])
    weights = np.tile(0.5 * width * w0, panels)
    return nodes, weights


@dataclass(frozen=True)
class PolarGrid:
    """Tensor grid on the truncated wedge e^{s_min} < r < e^{s_max}."""

    s_min: float
    s_max: float
    n_s: int
    n_phi: int
    wedge: WedgeParams
    phi_nodes: np.ndarray = field(repr=False)
    phi_weights: np.ndarray = field(repr=False)

    @property
    def delta_s(self) -> float:
        return (self.s_max - self.s_min) / self.n_s

    @property
    def s_nodes(self) -> np.ndarray:
        """Cell midpoints; together the cells cover [s_min, s_max]."""
        return self.s_min + (np.arange(self.n_s) + 0.5) * self.delta_s

    @property
    def r_nodes(self) -> np.ndarray:
        return np.exp(self.s_nodes)

    def meshes(self):
        """(S, PHI, R) broadcastable arrays of shape (n_s, n_phi)."""
        s = self.s_nodes[:, None]
        phi = self.phi_nodes[None, :]
        S, PHI = np.broadcast_arrays(s, phi)
        return S, PHI, np.exp(S)

    def header(self) -> str:
        return (f"# kappa={self.wedge.kappa!r} s_min={self.s_min!r} s_max={self.s_max!r} "
                f"n_s={self.n_s} n_phi={self.n_phi}")


def make_grid(s_min, s_max, n_s, n_phi, wedge: WedgeParams,
              panel_order: int = 8) -> PolarGrid:
    """Build a PolarGrid, validating the type invariants."""
    if not s_min < s_max:
        raise ConfigError(f"s_min must be below s_max, got {s_min} >= {s_max}")
    if n_s < 8 or not _is_power_of_two(n_s):
        raise ConfigError(f"n_s must be a power of two >= 8, got {n_s}")
    nodes, weights = gauss_legendre_rule(0.0, wedge.kappa, n_phi, panel_order)
    grid = PolarGrid(float(s_min), float(s_max), int(n_s), int(n_phi), wedge,
                     nodes, weights)
    assert abs(weights.sum() - wedge.kappa) < 1e-12 * max(1.0, wedge.kappa)
    return grid


@dataclass
class GridField:
    """Complex samples on a PolarGrid, shape (n_s, n_phi)."""

    grid: PolarGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        expect = (self.grid.n_s, self.grid.n_phi)
        if v.shape != expect:
            raise ConfigError(f"values shape {v.shape} does not match grid {expect}")
        if not np.all(np.isfinite(v)):
            bad = np.argwhere(~np.isfinite(v))[0]
            raise SamplingError(f"non-finite sample at (s index {bad[0]}, phi index {bad[1]})")
        self.values = v

    def copy_with(self, values) -> "GridField":
        return GridField(self.grid, values)

    # -- serialization: columns (s, phi, re, im), row-major in s ------
    def save_csv(self, path) -> None:
        g = self.grid
        with open(path, "w", newline="\n") as fh:
            fh.write(g.header() + "\n")
            fh.write("s,phi,re,im\n")
            for i, s in enumerate(g.s_nodes):
                for q, phi in enumerate(g.phi_nodes):
                    v = self.values[i, q]
                    fh.write(f"{float(s)!r},{float(phi)!r},"
                             f"{float(v.real)!r},{float(v.imag)!r}\n")

    @classmethod
    def load_csv(cls, path) -> "GridField":
        with open(path) as fh:
            head = fh.readline()
            if not head.startswith("#"):
                raise SchemaError("grid field CSV must start with a '# kappa=...' header")
            meta = dict(tok.split("=") for tok in head[1:].split())
            cols = fh.readline().strip()
            if cols != "s,phi,re,im":
                raise SchemaError(f"unexpected column header {cols!r}")
            data = np.loadtxt(io.StringIO(fh.read()), delimiter=",")
        wedge = WedgeParams(float(meta["kappa"]))
        grid = make_grid(float(meta["s_min"]), float(meta["s_max"]),
                         int(meta["n_s"]), int(meta["n_phi"]), wedge)
        n = grid.n_s * grid.n_phi
        if data.shape != (n, 4):
            raise SchemaError(f"expected {n} rows of 4 columns, got {data.shape}")
        values = (data[:, 2] + 1j * data[:, 3]).reshape(grid.n_s, grid.n_phi)
        return cls(grid, values)


# ---------------------------------------------------------------------------
# Analytic fields with exact polar derivatives.
# ---------------------------------------------------------------------------

class AnalyticField:
    """Field on the wedge providing (r D_r)^j D_phi^k up to j + k <= max_order."""

    name = "field"
    max_order = 2

    def polar_derivative(self, r, phi, j: int, k: int):
        raise NotImplementedError

    def __call__(self, r, phi):
        return self.polar_derivative(r, phi, 0, 0)


class SeparableField(AnalyticField):
    """u(r, phi) = R(log r) * A(phi) with analytic factor derivatives.

    ``radial(s, j)`` returns d^j/ds^j R and ``angular(phi, k)`` returns
    d^k/dphi^k A; since r D_r = d/ds, polar derivatives factor exactly.
    """

    def __init__(self, name, radial, angular, max_order: int = 2):
        self.name = name
        self.radial = radial
        self.angular = angular
        self.max_order = max_order

    def polar_derivative(self, r, phi, j: int, k: int):
        if j + k > self.max_order:
            from .errors import CapabilityError
            raise CapabilityError(f"{self.name} supplies orders <= {self.max_order}")
        s = np.log(np.asarray(r, dtype=float))
        return self.radial(s, j) * self.angular(np.asarray(phi, dtype=float), k)


class FieldSum(AnalyticField):
    """alpha*f + beta*g, used by linearity checks and manufactured data."""

    def __init__(self, terms, name="sum"):
        self.terms = list(terms)   # (coefficient, field) pairs
        self.name = name
        self.max_order = min(f.max_order for _, f in self.terms)

    def polar_derivative(self, r, phi, j, k):
        return sum(c * f.polar_derivative(r, phi, j, k) for c, f in self.terms)


class DilatedField(AnalyticField):
    """u(a * .) in the radial variable; (r D_r) commutes with dilation."""

    def __init__(self, base: AnalyticField, a: float):
        self.base = base
        self.a = float(a)
        self.name = f"{base.name}(x{self.a:g})"
        self.max_order = base.max_order

    def polar_derivative(self, r, phi, j, k):
        return self.base.polar_derivative(self.a * np.asarray(r, dtype=float), phi, j, k)


# -- reusable 1D profiles ----------------------------------------------------

def gaussian_bump(center: float = 0.0, sigma: float = 0.8):
    """exp(-(t-center)^2 / (2 sigma^2)) with derivatives up to order 2."""
    def prof(t, order=0):
        t = np.asarray(t, dtype=float)
        z = (t - center) / sigma
        v = np.exp(-0.5 * z * z)
        if order == 0:
            return v
        if order == 1:
            return -z / sigma * v
        if order == 2:
            return (z * z - 1.0) / sigma**2 * v
        raise ValueError(f"order {order} not supported")
    return prof


def plateau_window(lo: float, hi: float, width: float):
    """C-infinity window: 1 on [lo, hi], 0 outside (lo - width, hi + width)."""
    if hi - lo <= 0 or width <= 0:
        raise ConfigError("plateau window needs lo < hi and positive width")
    def prof(t, order=0):
        t = np.asarray(t, dtype=float)
        rise = smoothstep((t - lo + width) / width, order) / width**order
        fall = smoothstep((t - hi) / width, order) / width**order
        return rise - fall
    return prof


def sine_mode(n: int, wedge: WedgeParams):
    """sin(n pi phi / kappa) with derivatives of any order."""
    freq = n * math.pi / wedge.kappa
    cycle = [np.sin, np.cos, lambda u: -np.sin(u), lambda u: -np.cos(u)]
    def prof(phi, order=0):
        z = freq * np.asarray(phi, dtype=float)
        return freq**order * cycle[order % 4](z)
    return prof


def power_radial(exponent: float, window):
    """R(s) = exp(exponent * s) * window(s), derivatives by the product rule."""
    def prof(s, order=0):
        s = np.asarray(s, dtype=float)
        e = np.exp(exponent * s)
        if order == 0:
            return e * window(s, 0)
        if order == 1:
            return e * (exponent * window(s, 0) + window(s, 1))
        if order == 2:
            return e * (exponent**2 * window(s, 0) + 2 * exponent * window(s, 1) + window(s, 2))
        raise ValueError(f"order {order} not supported")
    return prof


def builtin_test_family(wedge: WedgeParams):
    """Standard corpus: separable bumps, a corner-singular field, an off-axis bump.

    (a) eta(r) sin(n pi phi/kappa), eta a Gaussian bump in log r, n = 1..3;
    (b) r^{pi/kappa} sin(pi phi/kappa) * cutoff(r) with a genuine plateau,
        harmonic where the cutoff is constant;
    (c) a smooth product bump compactly supported away from the vertex and
        off the symmetry axis.
    """
    fields = []
    for n in (1, 2, 3):
        fields.append(SeparableField(
            f"sep{n}", gaussian_bump(0.0, 0.8), sine_mode(n, wedge)))
    corner_window = plateau_window(-1.0, 1.0, 1.0)
    fields.append(SeparableField(
        "corner", power_radial(wedge.exponent, corner_window), sine_mode(1, wedge)))
    k = wedge.kappa
    fields.append(SeparableField(
        "offaxis",
        plateau_window(0.3, 1.2, 0.6),
        plateau_window(0.35 * k, 0.55 * k, 0.15 * k)))
    return fields


def sample(field: AnalyticField, grid: PolarGrid) -> GridField:
    """Evaluate an analytic field at every grid node."""
    S, PHI, R = grid.meshes()
    try:
        vals = np.asarray(field(R, PHI), dtype=complex)
    except Exception as exc:  # noqa: BLE001 - annotate with grid context
        raise SamplingError(f"evaluator failed on grid {grid.n_s}x{grid.n_phi}: {exc}") from exc
    vals = np.broadcast_to(vals, (grid.n_s, grid.n_phi)).copy()
    if not np.all(np.isfinite(vals)):
        bad = np.argwhere(~np.isfinite(vals))[0]
        raise SamplingError(
            f"non-finite value for field {field.name!r} at s index {bad[0]}, phi index {bad[1]}")
    return GridField(grid, vals)


def quad_integrate(gf: GridField, weight=None):
    """Integral over the truncated wedge of gf * weight against dx = r dr dphi.

    Midpoint rule in s (measure e^{2s} ds) times Gauss-Legendre in phi.
    ``weight`` is an optional pointwise function of (r, phi).
    """
    g = gf.grid
    S, PHI, R = g.meshes()
    summand = gf.values * np.exp(2.0 * S)
    if weight is not None:
        summand = summand * weight(R, PHI)
    if not np.all(np.isfinite(summand)):
        bad = np.argwhere(~np.isfinite(summand))[0]
        raise IntegrationError(
            f"non-finite integrand at s={g.s_nodes[bad[0]]!r}, phi={g.phi_nodes[bad[1]]!r}")
    total = g.delta_s * np.sum(summand @ g.phi_weights)
    return complex(total)


def radial_derivative_consistency(field: AnalyticField, r, phi,
                                  step: float = 1e-4) -> float:
    """Max abs gap between supplied (r D_r) u and a centered difference in s."""
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    s = np.log(r)
    fd = (field(np.exp(s + step), phi) - field(np.exp(s - step), phi)) / (2 * step)
    return float(np.max(np.abs(fd - field.polar_derivative(r, phi, 1, 0))))
