"""Cartesian derivatives from polar derivatives.

On the wedge, every Cartesian derivative D_x^alpha decomposes into a sum of
terms T(phi) * r^(b1-|alpha|) * D_r^b1 D_phi^b2 with trigonometric-polynomial
coefficients T.  The first-order table is the rotation matrix; higher orders
follow a product-rule recursion that this module implements exactly on
coefficient lists, so tables of any order can be built and evaluated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import CapabilityError, DomainError


def rotation_matrix(phi: float) -> np.ndarray:
    """2x2 rotation by phi."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


class TrigPoly:
    """phi -> sum_k c_k cos(k phi) + sum_k s_k sin(k phi), finite lists.

    Stored in the complex exponential basis internally, so products are
    plain coefficient convolutions and stay exact up to rounding.
    """

    __slots__ = ("_e",)

    def __init__(self, e_coeffs: np.ndarray):
        e = np.asarray(e_coeffs, dtype=complex)
        if e.size % 2 == 0:
            raise ValueError("exponential coefficient array must have odd length")
        self._e = e

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "TrigPoly":
        return cls(np.zeros(1, dtype=complex))

    @classmethod
    def from_cos_sin(cls, cos_coeffs, sin_coeffs) -> "TrigPoly":
        """cos_coeffs[k] multiplies cos(k phi); sin_coeffs[k-1] multiplies sin(k phi)."""
        cc = np.asarray(cos_coeffs, dtype=float)
        ss = np.asarray(sin_coeffs, dtype=float)
        k = max(len(cc) - 1, len(ss), 0)
        e = np.zeros(2 * k + 1, dtype=complex)
        if len(cc):
            e[k] = cc[0]
        for m in range(1, len(cc)):
            e[k + m] += cc[m] / 2.0
            e[k - m] += cc[m] / 2.0
        for m in range(1, len(ss) + 1):
            e[k + m] += ss[m - 1] / (2.0j)
            e[k - m] -= ss[m - 1] / (2.0j)
        return cls(e)

    @classmethod
    def cos(cls) -> "TrigPoly":
        return cls.from_cos_sin([0.0, 1.0], [])

    @classmethod
    def sin(cls) -> "TrigPoly":
        return cls.from_cos_sin([0.0], [1.0])

    # -- views ---------------------------------------------------------
    @property
    def degree(self) -> int:
        return (self._e.size - 1) // 2

    def cos_sin_coeffs(self):
        """Return (cos list, sin list) in the real basis."""
        k = self.degree
        cos_c = [float(self._e[k].real)]
        sin_c = []
        for m in range(1, k + 1):
            cos_c.append(float((self._e[k + m] + self._e[k - m]).real))
            sin_c.append(float((1.0j * (self._e[k + m] - self._e[k - m])).real))
        return cos_c, sin_c

    # -- algebra ---------------------------------------------------
    def _padded(self, k: int) -> np.ndarray:
        pad = k - self.degree
        if pad <= 0:
            return self._e
        return np.pad(self._e, (pad, pad))

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        k = max(self.degree, other.degree)
        return TrigPoly(self._padded(k) + other._padded(k))

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return TrigPoly(np.convolve(self._e, other._e))
        return TrigPoly(self._e * other)

    __rmul__ = __mul__

    def derivative(self) -> "TrigPoly":
        k = self.degree
        m = np.arange(-k, k + 1)
        return TrigPoly(1.0j * m * self._e)

    def trim(self, tol: float = 0.0) -> "TrigPoly":
        k = self.degree
        while k > 0 and abs(self._e[0]) <= tol and abs(self._e[-1]) <= tol:
            return TrigPoly(self._e[1:-1]).trim(tol)
        return self

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self._e) <= tol))

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        k = self.degree
        m = np.arange(-k, k + 1)
        val = np.tensordot(np.exp(1.0j * np.multiply.outer(phi, m)), self._e, axes=([-1], [0]))
        out = val.real  # imaginary parts cancel for real cos/sin coefficients
        return out if out.ndim else float(out)

    def allclose(self, other: "TrigPoly", tol: float = 1e-13) -> bool:
        k = max(self.degree, other.degree)
        return bool(np.allclose(self._padded(k), other._padded(k), atol=tol, rtol=0.0))


_E1 = (1, 0)
_E2 = (0, 1)

_BASE = {
    (_E1, _E1): TrigPoly.cos(),
    (_E1, _E2): TrigPoly.from_cos_sin([0.0], [-1.0]),   # -sin
    (_E2, _E1): TrigPoly.sin(),
    (_E2, _E2): TrigPoly.cos(),
}


@dataclass(frozen=True)
class TTable:
    """Map (alpha, beta) -> TrigPoly for all |alpha| <= max_order."""

    max_order: int
    entries: dict

    def poly(self, alpha, beta) -> TrigPoly:
        return self.entries.get((tuple(alpha), tuple(beta)), TrigPoly.zero())

    def betas(self, alpha):
        a = tuple(alpha)
        return sorted(b for (aa, b) in self.entries if aa == a)

    def to_json(self) -> str:
        """Debug dump: multi-indices to real cos/sin coefficient lists."""
        out = {}
        for (a, b), poly in sorted(self.entries.items()):
            cos_c, sin_c = poly.cos_sin_coeffs()
            out[f"{a}->{b}"] = {"cos": cos_c, "sin": sin_c}
        return json.dumps(out, indent=2)


def build_t_table(max_order: int) -> TTable:
    """Build the conversion table up to |alpha| = max_order.

    Order one is the rotation matrix; each following order applies the
    product rule to r^(b1-|alpha|) D_r^b1 D_phi^b2 and collects terms.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    entries = {(a, b): p for (a, b), p in _BASE.items()}
    by_alpha = {_E1: {_E1: _BASE[(_E1, _E1)], _E2: _BASE[(_E1, _E2)]},
                _E2: {_E1: _BASE[(_E2, _E1)], _E2: _BASE[(_E2, _E2)]}}
    for order in range(2, max_order + 1):
        new_by_alpha = {}
        for a1 in range(order + 1):
            alpha = (a1, order - a1)
            # reduce along the second axis when possible, else the first
            i, prev = (_E2, (a1, order - a1 - 1)) if order - a1 > 0 else (_E1, (a1 - 1, 0))
            ti1 = _BASE[(i, _E1)]
            ti2 = _BASE[(i, _E2)]
            acc: dict = {}

            def _add(beta, poly, acc=acc):
                acc[beta] = (acc[beta] + poly) if beta in acc else poly

            for beta, t in by_alpha.get(prev, new_by_alpha.get(prev, {})).items():
                b1, b2 = beta
                # term I: radial product rule
                _add((b1, b2), (float(b1 - (order - 1))) * (ti1 * t))
                _add((b1 + 1, b2), ti1 * t)
                # term II: angular product rule
                _add((b1, b2), ti2 * t.derivative())
                _add((b1, b2 + 1), ti2 * t)
            new_by_alpha[alpha] = {b: p.trim(1e-15) for b, p in acc.items() if not p.is_zero(1e-15)}
        for alpha, row in new_by_alpha.items():
            for beta, poly in row.items():
                entries[(alpha, beta)] = poly
        by_alpha.update(new_by_alpha)
    return TTable(max_order=max_order, entries=entries)


def _falling_factorial_coeffs(m: int) -> np.ndarray:
    """Coefficients of x(x-1)...(x-m+1) in ascending powers of x."""
    poly = np.array([1.0])
    for i in range(m):
        poly = np.convolve(poly, np.array([-float(i), 1.0]))
    out = np.zeros(m + 1)
    out[: poly.size] = poly
    return out


def plain_radial_derivative(field, r, phi, b1: int, b2: int):
    """D_r^b1 D_phi^b2 u from the field's (r D_r)^j D_phi^k derivatives.

    Uses r^m D_r^m = (r D_r)(r D_r - 1)...(r D_r - m + 1).
    """
    coeffs = _falling_factorial_coeffs(b1)
    r = np.asarray(r, dtype=float)
    total = 0.0
    for j, c in enumerate(coeffs):
        if c != 0.0:
            total = total + c * np.asarray(field.polar_derivative(r, phi, j, b2))
    return total * r ** (-float(b1))


def cart_derivative_via_table(field, alpha, r, phi, table: TTable):
    """Cartesian derivative D_x^alpha u evaluated at the polar point (r, phi)."""
    alpha = tuple(int(a) for a in alpha)
    order = sum(alpha)
    if order == 0:
        return field.polar_derivative(r, phi, 0, 0)
    if order > table.max_order:
        raise CapabilityError(f"table holds orders <= {table.max_order}, asked for {alpha}")
    if getattr(field, "max_order", 2) < order:
        raise CapabilityError(
            f"field supplies derivatives up to order {field.max_order}, asked for {alpha}")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("polar radius must be positive")
    phi = np.asarray(phi, dtype=float)
    total = 0.0
    for beta in table.betas(alpha):
        poly = table.poly(alpha, beta)
        b1, b2 = beta
        term = poly(phi) * r ** (b1 - order) * plain_radial_derivative(field, r, phi, b1, b2)
        total = total + term
    return total


def gradient_cart_from_polar(field, r, phi):
    """Cartesian gradient A(phi) @ (D_r u, r^{-1} D_phi u) at (r, phi)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("polar radius must be positive")
    phi = np.asarray(phi, dtype=float)
    dr = field.polar_derivative(r, phi, 1, 0) / r
    dphi = field.polar_derivative(r, phi, 0, 1) / r
    c, s = np.cos(phi), np.sin(phi)
    return np.stack([c * dr - s * dphi, s * dr + c * dphi], axis=-1)


def leibniz_product_derivative(table: TTable, alpha, factors):
    """D^alpha(f*g) = sum_{beta<=alpha} binom(alpha,beta) D^beta f D^{alpha-beta} g.

    ``factors`` maps each multi-index pair to the two precomputed derivative
    arrays: factors[beta] = D^beta f, factors2[alpha-beta] = D^{alpha-beta} g.
    Provided as a helper for weighted-norm code; the two dicts come in as a
    tuple (df, dg).
    """
    df, dg = factors
    a1, a2 = alpha
    total = 0.0
    for b1 in range(a1 + 1):
        for b2 in range(a2 + 1):
            w = comb(a1, b1) * comb(a2, b2)
            total = total + w * df[(b1, b2)] * dg[(a1 - b1, a2 - b2)]
    return total
