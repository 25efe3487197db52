"""The transform between period-style polynomials R(X) and zeta-polynomials Z(s).

Z is the unique polynomial of degree <= w with

    R(X) / (1 - X)^(w+1)  =  sum_{n >= 0} Z(-n) X^n.

The forward map uses the closed form Z(s) = sum_j a_j C(w - s - j, w)
(a basis expansion in exact binomial polynomials); the inverse uses the
finite convolution with (1 - X)^(w+1).  Both directions are exact and
round-trip to the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from zetapoly.errors import ConsistencyError, InputError
from zetapoly.exactnum import (
    ZERO,
    GaussianRational,
    binom_poly_in_s,
    binom_poly_in_s_scaled,
    common_denominator,
)
from zetapoly.polyspace import PolyX, _parse_poly_dict


@dataclass(frozen=True)
class ZetaPoly:
    """A polynomial of degree <= w in the zeta variable s.

    Mirrors PolyX: exactly w+1 coefficients in ascending powers of s,
    with w carried as metadata.
    """

    w: int
    coeffs: tuple[GaussianRational, ...]

    def __post_init__(self):
        if self.w < 2 or self.w % 2:
            raise InputError(f"w must be an even integer >= 2, got {self.w}")
        coeffs = tuple(GaussianRational.coerce(c) for c in self.coeffs)
        if len(coeffs) != self.w + 1:
            raise InputError(
                f"expected {self.w + 1} coefficients for w={self.w}, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def make(cls, w: int, values: Sequence) -> "ZetaPoly":
        vals = [GaussianRational.coerce(v) for v in values]
        if len(vals) > w + 1:
            raise InputError(f"{len(vals)} coefficients exceed degree bound w={w}")
        vals += [ZERO] * (w + 1 - len(vals))
        return cls(w, tuple(vals))

    def degree(self) -> int:
        for j in range(self.w, -1, -1):
            if not self.coeffs[j].is_zero():
                return j
        return -1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def evaluate(self, s: GaussianRational) -> GaussianRational:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def at_int(self, n: int) -> GaussianRational:
        return self.evaluate(GaussianRational(n))

    def __add__(self, other: "ZetaPoly") -> "ZetaPoly":
        if self.w != other.w:
            raise InputError(f"mixing w={self.w} and w={other.w} zeta-polynomials")
        return ZetaPoly(self.w, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ZetaPoly") -> "ZetaPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "ZetaPoly":
        c = GaussianRational.coerce(c)
        return ZetaPoly(self.w, tuple(c * a for a in self.coeffs))

    def compose_one_minus_s(self) -> "ZetaPoly":
        """The polynomial Z(1 - s), expanded exactly."""
        den, pairs = common_denominator(self.coeffs)
        acc = [[0, 0] for _ in range(self.w + 1)]
        # (1 - s)^p expanded by the binomial theorem, accumulated per power.
        for p, (cr, cm) in enumerate(pairs):
            if not cr and not cm:
                continue
            for t in range(p + 1):
                factor = math.comb(p, t) * (-1 if t % 2 else 1)
                acc[t][0] += cr * factor
                acc[t][1] += cm * factor
        return ZetaPoly(
            self.w,
            tuple(
                GaussianRational(Fraction(r, den), Fraction(m, den)) for r, m in acc
            ),
        )

    def to_dict(self) -> dict:
        return {
            "w": self.w,
            "variable": "s",
            "coeffs": [list(c.to_str_pair()) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ZetaPoly":
        w, coeffs = _parse_poly_dict(data, expect_variable="s")
        return cls(w, coeffs)


# ---------------------------------------------------------------------
# Binomial basis polynomials
# ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _basis_coeffs(w: int, j: int) -> tuple[Fraction, ...]:
    return binom_poly_in_s(w, w - j, -1)


@lru_cache(maxsize=None)
def _basis_coeffs_scaled(w: int, j: int) -> tuple[int, ...]:
    """Integer coefficients of w! * C(w - s - j, w)."""
    return binom_poly_in_s_scaled(w, w - j, -1)


def binomial_in_s(w: int, j: int) -> ZetaPoly:
    """C(w - s - j, w) as an exact degree-w polynomial in s.

    This is the basis polynomial of the forward transform; its leading
    coefficient is 1/w! for every j.
    """
    if w < 2 or w % 2:
        raise InputError(f"w must be an even integer >= 2, got {w}")
    if not 0 <= j <= w:
        raise InputError(f"j must lie in [0, {w}], got {j}")
    return ZetaPoly(w, tuple(GaussianRational(c) for c in _basis_coeffs(w, j)))


# ---------------------------------------------------------------------
# The transform
# ---------------------------------------------------------------------


def rv_forward(R: PolyX) -> ZetaPoly:
    """Z(s) = sum_j a_j C(w - s - j, w), exactly.

    Denominators are cleared once so the double loop runs on plain
    integers; each output coefficient is normalized exactly once.
    """
    w = R.w
    den, pairs = common_denominator(R.coeffs)
    scale = den * math.factorial(w)
    acc = [[0, 0] for _ in range(w + 1)]
    for j, (ar, am) in enumerate(pairs):
        if not ar and not am:
            continue
        for t, b in enumerate(_basis_coeffs_scaled(w, j)):
            if b:
                acc[t][0] += ar * b
                acc[t][1] += am * b
    return ZetaPoly(
        w,
        tuple(GaussianRational(Fraction(r, scale), Fraction(m, scale)) for r, m in acc),
    )


def _series_values_int(Z: ZetaPoly, count: int) -> tuple[int, list[tuple[int, int]]]:
    """(den, pairs) with Z(-n) = (pairs[n][0] + pairs[n][1] i)/den, by
    integer Horner evaluation."""
    den, pairs = common_denominator(Z.coeffs)
    out = []
    for n in range(count):
        x = -n
        r = 0
        m = 0
        for cr, cm in reversed(pairs):
            r = r * x + cr
            m = m * x + cm
        out.append((r, m))
    return den, out


def series_coeffs(Z: ZetaPoly, count: int) -> list[GaussianRational]:
    """The generating-series values Z(0), Z(-1), ..., Z(-count+1)."""
    if count < 1:
        raise InputError("count must be >= 1")
    den, vals = _series_values_int(Z, count)
    return [
        GaussianRational(Fraction(r, den), Fraction(m, den)) for r, m in vals
    ]


def rv_inverse(Z: ZetaPoly) -> PolyX:
    """Recover R(X) from Z(s) by convolving the series with (1 - X)^(w+1).

    r_m = sum_{j=0}^{min(m, w+1)} (-1)^j C(w+1, j) Z(-(m-j)).  The same
    convolution for m = w+1 .. 2w+2 must vanish identically (an order
    w+1 finite difference of a degree <= w polynomial); this is verified
    and a failure reports an internal inconsistency.
    """
    w = Z.w
    den, zvals = _series_values_int(Z, 2 * w + 3)
    signed = [(-1) ** j * math.comb(w + 1, j) for j in range(w + 2)]
    out = []
    for m in range(w + 1):
        r = 0
        im = 0
        for j in range(min(m, w + 1) + 1):
            zr, zm = zvals[m - j]
            r += zr * signed[j]
            im += zm * signed[j]
        out.append(GaussianRational(Fraction(r, den), Fraction(im, den)))
    for m in range(w + 1, 2 * w + 3):
        r = 0
        im = 0
        for j in range(min(m, w + 1) + 1):
            zr, zm = zvals[m - j]
            r += zr * signed[j]
            im += zm * signed[j]
        if r or im:
            raise ConsistencyError(
                f"convolution coefficient at X^{m} is nonzero; input has degree > w"
            )
    return PolyX(w, tuple(out))
