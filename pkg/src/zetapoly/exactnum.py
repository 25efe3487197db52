"""Exact scalar and series arithmetic over Q and Q(i).

Everything in this module is exact: Gaussian rationals built on
``fractions.Fraction``, truncated power/Laurent series with explicit
truncation bookkeeping, and the generalized binomial machinery used by
the zeta-polynomial transform.  No floating point enters anywhere.
All values are immutable and all operations are pure, so they are safe
for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rationalish = Union[int, Fraction, str]


def as_fraction(x: Rationalish) -> Fraction:
    """Coerce an int, Fraction, or fraction string ("36/691", "-5") to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """An exact element of Q(i), stored as a (re, im) pair of Fractions.

    Fractions keep denominators positive and in lowest terms, so equality
    is exact structural equality of the normalized form.  Instances are
    immutable by convention; every operation returns a new value.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rationalish = 0, im: Rationalish = 0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    # -- constructors ------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction, str)):
            return cls(x)
        raise TypeError(f"cannot interpret {x!r} as an element of Q(i)")

    @classmethod
    def from_str_pair(cls, pair: Sequence[str]) -> "GaussianRational":
        """Parse the serialized form ("p/q", "r/s")."""
        if len(pair) != 2:
            raise ValueError(f"expected a (re, im) string pair, got {pair!r}")
        return cls(Fraction(str(pair[0])), Fraction(str(pair[1])))

    def to_str_pair(self) -> tuple[str, str]:
        """Serialize as ("p/q", "r/s"), always carrying the denominator."""
        return (
            f"{self.re.numerator}/{self.re.denominator}",
            f"{self.im.numerator}/{self.im.denominator}",
        )

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2 = re^2 + im^2, an exact rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "GaussianRational":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = GaussianRational(1)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ----------------------------------------

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def qi(re: Rationalish = 0, im: Rationalish = 0) -> GaussianRational:
    """Shorthand constructor for Q(i) values."""
    return GaussianRational(re, im)


# ---------------------------------------------------------------------
# Generalized binomial coefficients
# ---------------------------------------------------------------------

def binom_int(n: int, k: int) -> int:
    """Generalized binomial coefficient C(n, k) = n(n-1)...(n-k+1)/k!.

    ``n`` may be any integer; ``k`` must be non-negative.  The result is
    always an integer, and equals 0 when 0 <= n < k.
    """
    if not isinstance(k, int) or not isinstance(n, int):
        raise TypeError("binom_int expects integer arguments")
    if k < 0:
        raise ValueError(f"binom_int: negative lower index k={k}")
    if n >= 0:
        return math.comb(n, k)
    # C(-m, k) = (-1)^k C(m+k-1, k)
    return (-1) ** k * math.comb(-n + k - 1, k)


def binom_poly_in_s_scaled(w: int, shift: int, slope: int) -> tuple[int, ...]:
    """Integer coefficients (ascending in s) of w! * C(shift + slope*s, w).

    Expands the falling factorial (shift + slope*s)(shift + slope*s - 1)
    ... (shift + slope*s - w + 1) exactly, avoiding interpolation.
    """
    if w < 0:
        raise ValueError("w must be non-negative")
    coeffs = [1]
    for t in range(w):
        const = shift - t
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d] += c * const
            nxt[d + 1] += c * slope
        coeffs = nxt
    return tuple(coeffs)


def binom_poly_in_s(w: int, shift: int, slope: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending in s) of C(shift + slope*s, w) as a polynomial in s."""
    fact = math.factorial(w)
    return tuple(Fraction(c, fact) for c in binom_poly_in_s_scaled(w, shift, slope))


def common_denominator(
    coeffs: Sequence[GaussianRational],
) -> tuple[int, list[tuple[int, int]]]:
    """One positive denominator D and integer pairs (p, q) with each
    coefficient equal to (p + q i)/D.  Lets hot loops run on plain ints."""
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    pairs = [
        (
            c.re.numerator * (den // c.re.denominator),
            c.im.numerator * (den // c.im.denominator),
        )
        for c in coeffs
    ]
    return den, pairs


# ---------------------------------------------------------------------
# Truncated power / Laurent series over Q(i)
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class PowerSeries:
    """A truncated series sum_{t} coeffs[t] * x^(m0 + t) over Q(i).

    ``m0`` may be negative (a Laurent expansion about 0 with finite
    principal part).  ``exact=True`` marks a series with no truncation
    error (a polynomial times a power of x): all coefficients beyond the
    stored range are genuinely zero.  Truncation is always explicit in
    the value, never implicit global state.
    """

    m0: int
    coeffs: tuple[GaussianRational, ...]
    exact: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(GaussianRational.coerce(c) for c in self.coeffs)
        )
        if not self.coeffs:
            raise ValueError("a PowerSeries must store at least one term")

    @classmethod
    def from_polynomial(cls, coeffs: Sequence, m0: int = 0) -> "PowerSeries":
        """An exact series (no truncation) from polynomial coefficients."""
        return cls(m0, tuple(coeffs), exact=True)

    @property
    def order(self) -> int:
        """Number of stored terms."""
        return len(self.coeffs)

    def coeff(self, m: int) -> GaussianRational:
        """Coefficient of x^m.  Raises beyond the known truncation range."""
        t = m - self.m0
        if t < 0:
            return ZERO
        if t >= len(self.coeffs):
            if self.exact:
                return ZERO
            raise ValueError(f"coefficient of x^{m} is beyond the truncation order")
        return self.coeffs[t]

    def mul(self, other: "PowerSeries", order: int | None = None) -> "PowerSeries":
        """Cauchy product, truncated at the shortest certain length.

        ``order`` (number of result terms) may shorten the result further;
        it cannot exceed what the operands' truncations support.
        """
        known = []
        if not self.exact:
            known.append(len(self.coeffs))
        if not other.exact:
            known.append(len(other.coeffs))
        if known:
            limit = min(known)
        else:
            limit = len(self.coeffs) + len(other.coeffs) - 1
        if order is not None:
            if order > limit and known:
                raise ValueError(
                    f"product only certain to {limit} terms, {order} requested"
                )
            limit = min(order, limit) if known else order
        out = [ZERO] * limit
        for ta, ca in enumerate(self.coeffs):
            if ca.is_zero() or ta >= limit:
                continue
            top = min(len(other.coeffs), limit - ta)
            for tb in range(top):
                cb = other.coeffs[tb]
                if not cb.is_zero():
                    out[ta + tb] = out[ta + tb] + ca * cb
        return PowerSeries(
            self.m0 + other.m0, tuple(out), exact=self.exact and other.exact
        )

    def inverse(self, order: int) -> "PowerSeries":
        """Multiplicative inverse truncated to ``order`` terms.

        Requires a nonzero lowest-order coefficient; the result starts at
        exponent -m0.
        """
        if order < 1:
            raise ValueError("inverse needs at least one term")
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ZeroDivisionError(
                "series inverse requires a nonzero lowest-order coefficient"
            )
        if not self.exact and order > len(self.coeffs):
            raise ValueError(
                f"operand only known to {len(self.coeffs)} terms, {order} requested"
            )
        c0inv = c0.inverse()
        out = [ZERO] * order
        out[0] = c0inv
        for t in range(1, order):
            acc = ZERO
            top = min(t, len(self.coeffs) - 1)
            for u in range(1, top + 1):
                cu = self.coeffs[u]
                if not cu.is_zero():
                    acc = acc + cu * out[t - u]
            out[t] = -c0inv * acc
        return PowerSeries(-self.m0, tuple(out), exact=False)

    def shift(self, delta: int) -> "PowerSeries":
        """Multiply by x^delta."""
        return PowerSeries(self.m0 + delta, self.coeffs, exact=self.exact)


def series_mul(p: PowerSeries, q: PowerSeries, order: int | None = None) -> PowerSeries:
    return p.mul(q, order)


def series_inverse(p: PowerSeries, order: int) -> PowerSeries:
    return p.inverse(order)


def linear_power(a: GaussianRational, b: GaussianRational, n: int) -> tuple[GaussianRational, ...]:
    """Coefficients (ascending) of (a*x + b)^n over Q(i)."""
    if n < 0:
        raise ValueError("negative power of a linear form")
    out = [ZERO] * (n + 1)
    for t in range(n + 1):
        out[t] = GaussianRational(math.comb(n, t)) * a**t * b ** (n - t)
    return tuple(out)
