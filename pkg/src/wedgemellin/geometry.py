"""Geometry of planar angular domains (infinite wedges).

A wedge of opening angle ``kappa`` is the set of points with polar angle in
(0, kappa) and positive radius.  This module provides the two distance
functions that drive all weights (distance to the vertex, distance to the
boundary), their regularized closed forms, the polar coordinate transform,
and smooth dyadic resolutions of unity subordinate to the vertex.

All functions are pure and accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi


def _as_array(x):
    a = np.asarray(x, dtype=float)
    return a


def _like_input(result, *inputs):
    """Return a python float when every input was scalar."""
    if all(np.ndim(x) == 0 for x in inputs):
        return float(result)
    return result


@dataclass(frozen=True)
class WedgeParams:
    """Opening angle of the wedge and derived spectral constants."""

    kappa: float

    def __post_init__(self):
        if not (0.0 < self.kappa < TWO_PI):
            raise DomainError(f"kappa must lie in (0, 2*pi), got {self.kappa}")

    @property
    def exponent(self) -> float:
        """Leading corner exponent pi/kappa (also the spectrum generator)."""
        return math.pi / self.kappa


def rho_circ(point):
    """Distance of a Cartesian point to the wedge vertex at the origin."""
    p = _as_array(point)
    r = np.hypot(p[..., 0], p[..., 1]) if p.shape[-1:] == (2,) else np.hypot(p[0], p[1])
    return _like_input(r, r)


def mu(phi, wedge: WedgeParams):
    """min{pi/2, phi, kappa - phi} for interior angles phi."""
    p = _as_array(phi)
    if np.any(p <= 0.0) or np.any(p >= wedge.kappa):
        raise DomainError("phi must lie strictly inside (0, kappa)")
    out = np.minimum(0.5 * math.pi, np.minimum(p, wedge.kappa - p))
    return _like_input(out, phi)


def rho_boundary(r, phi, wedge: WedgeParams):
    """Exact distance r*sin(mu(phi)) of the point (r, phi) to the boundary."""
    out = _as_array(r) * np.sin(mu(phi, wedge))
    return _like_input(out, r, phi)


def psi_interval(phi, wedge: WedgeParams):
    """Regularized interval distance sin(pi*phi/kappa); 0 at both endpoints."""
    p = _as_array(phi)
    if np.any(p < 0.0) or np.any(p > wedge.kappa):
        raise DomainError("phi must lie in [0, kappa]")
    out = np.sin(math.pi * p / wedge.kappa)
    return _like_input(out, phi)


def psi_wedge(r, phi, wedge: WedgeParams):
    """Regularized boundary distance r*sin(pi*phi/kappa), comparable to rho_boundary."""
    out = _as_array(r) * psi_interval(phi, wedge)
    return _like_input(out, r, phi)


def polar_to_cart(r, phi):
    """Map (r, phi) to Cartesian coordinates; r must be positive."""
    rr = _as_array(r)
    if np.any(rr <= 0.0):
        raise DomainError("polar radius must be positive")
    pp = _as_array(phi)
    x = rr * np.cos(pp)
    y = rr * np.sin(pp)
    return _like_input(x, r, phi), _like_input(y, r, phi)


def cart_to_polar(point):
    """Inverse polar transform; the angle is normalized to [0, 2*pi)."""
    p = _as_array(point)
    x, y = (p[..., 0], p[..., 1]) if p.shape[-1:] == (2,) else (p[0], p[1])
    r = np.hypot(x, y)
    if np.any(r == 0.0):
        raise DomainError("polar angle undefined at the origin")
    phi = np.mod(np.arctan2(y, x), TWO_PI)
    return _like_input(r, r), _like_input(phi, phi)


# ---------------------------------------------------------------------------
# Smooth mollified step and dyadic resolution of unity.
# ---------------------------------------------------------------------------

def _smoothstep(t, order: int = 0):
    """C-infinity step h(t)/(h(t)+h(1-t)) with h(t)=exp(-1/t), or its
    first/second derivative.  Identically 0 for t<=0 and 1 for t>=1."""
    t = _as_array(t)
    out = np.zeros_like(t)
    if order == 0:
        out[t >= 1.0] = 1.0
    inner = (t > 0.0) & (t < 1.0)
    if not np.any(inner):
        return out
    ti = t[inner]
    si = 1.0 - ti
    a = np.exp(-1.0 / ti)
    b = np.exp(-1.0 / si)
    d = a + b
    if order == 0:
        out[inner] = a / d
        return out
    da = a / ti**2
    db = -b / si**2
    dd = da + db
    if order == 1:
        out[inner] = (da * d - a * dd) / d**2
        return out
    if order == 2:
        d2a = a * (1.0 / ti**4 - 2.0 / ti**3)
        d2b = b * (1.0 / si**4 - 2.0 / si**3)
        d2d = d2a + d2b
        out[inner] = (d2a * d - a * d2d) / d**2 - 2.0 * dd * (da * d - a * dd) / d**3
        return out
    raise ValueError(f"smoothstep derivative order {order} not implemented")


def smoothstep(t, order: int = 0):
    """Public mollified step; see _smoothstep.  Scalar in, scalar out."""
    return _like_input(_smoothstep(t, order), t)


@dataclass(frozen=True)
class ResolutionOfUnity:
    """Dyadic partition of unity zeta_nu(x) = eta(c^{-nu} |x|).

    The radial profile eta = varphi - varphi(c * .) telescopes, so the sum
    over nu is exactly 1 for every point away from the vertex.  varphi is a
    mollified plateau with 1 on [0, a] and 0 beyond b, where 1 < a < b < c.
    """

    scale_base: float = math.e
    plateau_lo: float = field(default=0.0)   # a; 0 means c**(1/3)
    plateau_hi: float = field(default=0.0)   # b; 0 means c**(2/3)

    def __post_init__(self):
        c = self.scale_base
        if c <= 1.0:
            raise DomainError(f"scale base must exceed 1, got {c}")
        a = self.plateau_lo or c ** (1.0 / 3.0)
        b = self.plateau_hi or c ** (2.0 / 3.0)
        if not (1.0 < a < b < c):
            raise DomainError(f"plateau parameters must satisfy 1 < a < b < c, got {a}, {b}, {c}")
        object.__setattr__(self, "plateau_lo", a)
        object.__setattr__(self, "plateau_hi", b)

    def _plateau(self, r, order: int):
        # varphi(r): 1 on [0, a], 0 beyond b, mollified in between.
        a, b = self.plateau_lo, self.plateau_hi
        w = b - a
        t = (np.abs(_as_array(r)) - a) / w
        val = _smoothstep(t, order) / w**order
        return (1.0 - val) if order == 0 else -val

    def profile(self, r, order: int = 0):
        """Radial profile eta = varphi - varphi(c*.) or a derivative of it."""
        c = self.scale_base
        out = self._plateau(r, order) - c**order * self._plateau(c * _as_array(r), order)
        return _like_input(out, r)

    def zeta(self, nu: int, r, order: int = 0):
        """zeta_nu(|x|=r) = eta(c^{-nu} r), with radial derivatives."""
        c = self.scale_base
        out = c ** (-nu * order) * self.profile(c ** (-float(nu)) * _as_array(r), order)
        return _like_input(out, r)

    def support(self, nu: int):
        """Open radial interval outside of which zeta_nu vanishes."""
        c = self.scale_base
        return (self.plateau_lo * c ** (nu - 1.0), self.plateau_hi * c ** float(nu))

    def index_range(self, r_min: float, r_max: float):
        """All nu whose support intersects [r_min, r_max]."""
        c = self.scale_base
        lo = math.floor(math.log(r_min / self.plateau_hi, c))
        hi = math.ceil(math.log(r_max / self.plateau_lo, c) + 1.0)
        return range(lo, hi + 1)


def partition_values(res: ResolutionOfUnity, point):
    """All (nu, zeta_nu(point)) pairs with a nonzero value.

    For the dilation-covariant construction with k0 = 1 this list has at
    most two entries and the values sum exactly to one.
    """
    r = rho_circ(point)
    if r == 0.0:
        raise DomainError("partition of unity undefined at the vertex")
    out = []
    for nu in res.index_range(r, r):
        v = float(res.zeta(nu, r))
        if v != 0.0:
            out.append((nu, v))
    return out
