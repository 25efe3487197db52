"""Verification machinery for zeta-polynomials Z(s).

Covers the functional-equation residual Z(s) + eps i^w Z(1-s), the
Laurent coefficients and the convergent triple-sum identity attached to
a positive integer n, polynomial root extraction at high precision, the
critical-line / unit-circle root diagnostics, and the integrality and
positivity hypotheses under which Z is a Hilbert polynomial.

Identity checks on exact inputs are exact (equality with the zero
polynomial over Q(i)); tolerances appear only for truncation of the
infinite sum and for the numeric pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Sequence, Union

import mpmath
from mpmath import mp

from zetapoly.errors import ConsistencyError, InputError, PrecisionError
from zetapoly.exactnum import I, ONE, ZERO, GaussianRational, PowerSeries, linear_power, qi
from zetapoly.rv import ZetaPoly, series_coeffs

TolLike = Union[str, int, Fraction, Decimal]


def as_tolerance(tol: TolLike) -> Fraction:
    """Exact positive rational from a decimal tolerance string."""
    if isinstance(tol, Fraction):
        out = tol
    elif isinstance(tol, Decimal):
        out = Fraction(tol)
    elif isinstance(tol, (str, int)):
        try:
            out = Fraction(str(tol))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse tolerance {tol!r}") from exc
    else:
        raise InputError(f"cannot use {tol!r} as a tolerance")
    if out <= 0:
        raise InputError(f"tolerance must be positive, got {tol!r}")
    return out


# ---------------------------------------------------------------------
# Functional equation
# ---------------------------------------------------------------------


def functional_eq_residual(Z: ZetaPoly, eps: int) -> ZetaPoly:
    """The exact polynomial Z(s) + eps * i^w * Z(1-s).

    Zero exactly when the functional equation holds.
    """
    if eps not in (1, -1):
        raise InputError(f"eps must be +1 or -1, got {eps!r}")
    phase = GaussianRational(eps) * I**Z.w
    return Z + Z.compose_one_minus_s().scale(phase)


# ---------------------------------------------------------------------
# Laurent coefficients of the kernel attached to (w, n)
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentCoeffs:
    """Exact Laurent coefficients a_m, m = -(n+1) .. M, of

        (1-x)^(w+1) (x+i)^n / ((x+i-ix)^(w+1) (ix)^(n+1))

    expanded about x = 0.  The pole at 0 has exact order n+1."""

    w: int
    n: int
    M: int
    coeffs: tuple[GaussianRational, ...]

    @property
    def m0(self) -> int:
        return -(self.n + 1)

    def coeff(self, m: int) -> GaussianRational:
        if m < self.m0:
            return ZERO
        if m > self.M:
            raise InputError(f"coefficient a_{m} beyond truncation order {self.M}")
        return self.coeffs[m - self.m0]


def laurent_coeffs(w: int, n: int, M: int) -> LaurentCoeffs:
    """Expand the kernel exactly to order M (M >= -(n+1) is allowed to be
    negative: only part of the principal part is then produced)."""
    if w < 2 or w % 2:
        raise InputError(f"w must be an even integer >= 2, got {w}")
    if n < 1:
        raise InputError(f"n must be a positive integer, got {n}")
    if M < -(n + 1):
        raise InputError(f"truncation order M={M} precedes the pole order {-(n + 1)}")
    terms = M + n + 2
    numerator = PowerSeries.from_polynomial(
        _poly_product(linear_power(-ONE, ONE, w + 1), linear_power(ONE, I, n))
    )
    # denominator = i^(n+1) x^(n+1) ((1-i)x + i)^(w+1); invert the bracket.
    bracket = PowerSeries.from_polynomial(
        tuple(I ** (n + 1) * c for c in linear_power(qi(1, -1), I, w + 1))
    )
    inv = bracket.inverse(terms)
    series = numerator.mul(inv, order=terms).shift(-(n + 1))
    coeffs = tuple(series.coeff(m) for m in range(-(n + 1), M + 1))
    lead = coeffs[0]
    if lead != -(I ** (-w)):
        raise ConsistencyError("Laurent leading coefficient differs from -i^(-w)")
    return LaurentCoeffs(w, n, M, coeffs)


def _poly_product(p: Sequence[GaussianRational], q: Sequence[GaussianRational]) -> tuple:
    out = [ZERO] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        if ca.is_zero():
            continue
        for b, cb in enumerate(q):
            if not cb.is_zero():
                out[a + b] = out[a + b] + ca * cb
    return tuple(out)


# ---------------------------------------------------------------------
# The convergent triple-sum identity
# ---------------------------------------------------------------------

RHO = Fraction(3, 4)  # documented tail ratio; asymptotic term ratio is 1/sqrt(2)
K_MIN = 40
K_MAX_DEFAULT = 400


@dataclass(frozen=True)
class Thm2Report:
    """Result of evaluating the identity value at a positive integer n.

    ``exact_part`` is Z(-n) + (-i)^w sum_{m=1}^{n+1} a_{-m} Z(1-m);
    ``partial_sums`` holds the exact per-k terms t_0 .. t_{k_stop}; the
    reported ``total`` is their exact sum plus the exact part.  Under
    the geometric tail model with ratio RHO, |identity value - total|
    <= residual_bound whenever ``converged`` is set.
    """

    w: int
    n: int
    exact_part: GaussianRational
    partial_sums: tuple[GaussianRational, ...]
    total: GaussianRational
    k_stop: int
    converged: bool
    residual_bound: mpmath.mpf
    tol: Fraction

    @property
    def abs_total(self) -> mpmath.mpf:
        with mp.workprec(64):
            return mpmath.sqrt(mpmath.mpf(self.total.norm2().numerator)
                               / mpmath.mpf(self.total.norm2().denominator))

    def total_below(self, bound: TolLike) -> bool:
        """Exact test |total| < bound."""
        b = as_tolerance(bound)
        return self.total.norm2() < b * b

    def to_dict(self) -> dict:
        return {
            "w": self.w,
            "n": self.n,
            "k_stop": self.k_stop,
            "converged": self.converged,
            "abs_total": mpmath.nstr(self.abs_total, 12),
            "residual_bound": mpmath.nstr(self.residual_bound, 12),
            "total": list(self.total.to_str_pair()),
            "tol": str(self.tol),
        }


def thm2_residual(
    Z: ZetaPoly,
    n: int,
    tol: TolLike = "1e-10",
    k_max: int = K_MAX_DEFAULT,
    k_min: int = K_MIN,
) -> Thm2Report:
    """Evaluate the three-part identity value at n, with exact per-k terms.

    t_k = C(k+n, n) (-i)^k sum_{m=0}^{k+n} sum_{j=0}^{k+n-m} C(m+w, w)
          C(w+1, j) (-1)^(j+1) (1-i)^(-(m+w+1)) Z(m+j-k-n)

    Every Z-argument is a non-positive integer (checked structurally), so
    only the series values Z(0), Z(-1), ... enter.  Terms with
    k+n-m >= w+1 vanish identically (their j-sum is an order-(w+1)
    finite difference of a polynomial of degree <= w) and are skipped;
    the exact value of each t_k is unchanged.

    Summation stops at the first k >= k_min where the magnitudes of the
    last three terms all fall below tol*(1-RHO)/RHO, or at k_max with
    ``converged`` cleared.  The comparison is performed exactly on
    squared magnitudes.
    """
    if n < 1:
        raise InputError(f"n must be a positive integer, got {n}")
    w = Z.w
    tol_frac = as_tolerance(tol)
    theta2 = (tol_frac * (1 - RHO) / RHO) ** 2

    zvals = series_coeffs(Z, max(w, n) + 1)  # zvals[t] = Z(-t)
    principal = laurent_coeffs(w, n, -1)
    phase_w = (-I) ** w
    exact_part = zvals[n] + phase_w * sum(
        (principal.coeff(-m) * zvals[m - 1] for m in range(1, n + 2)), ZERO
    )

    inv_one_minus_i = qi(1, -1).inverse()
    invpow = [ONE]  # invpow[e] = (1-i)^(-e)

    def inv_power(e: int) -> GaussianRational:
        while len(invpow) <= e:
            invpow.append(invpow[-1] * inv_one_minus_i)
        return invpow[e]

    minus_i_cycle = (ONE, -I, -ONE, I)  # (-i)^k by k mod 4

    terms: list[GaussianRational] = []
    total = exact_part
    norms: list[Fraction] = []
    k_stop = k_max
    converged = False
    for k in range(k_max + 1):
        K = k + n
        inner = ZERO
        for m in range(max(0, K - w), K + 1):
            jtop = min(K - m, w + 1)
            jsum = ZERO
            for j in range(jtop + 1):
                t_index = K - m - j  # -(argument) of Z
                if t_index < 0:
                    raise ConsistencyError("positive argument reached the series values")
                zc = zvals[t_index]
                if zc.is_zero():
                    continue
                sign = -1 if j % 2 == 0 else 1  # (-1)^(j+1)
                jsum = jsum + zc * (sign * math.comb(w + 1, j))
            if jsum.is_zero():
                continue
            inner = inner + jsum * (inv_power(m + w + 1) * math.comb(m + w, w))
        t_k = inner * (minus_i_cycle[k % 4] * math.comb(K, n))
        terms.append(t_k)
        total = total + t_k
        norms.append(t_k.norm2())
        if k >= max(k_min, 2) and all(v < theta2 for v in norms[-3:]):
            k_stop = k
            converged = True
            break
    with mp.workprec(64):
        if converged:
            worst = max(norms[-3:])
            bound = mpmath.sqrt(
                mpmath.mpf(worst.numerator) / mpmath.mpf(worst.denominator)
            ) * mpmath.mpf(RHO.numerator) / mpmath.mpf(RHO.denominator - RHO.numerator)
        else:
            bound = mpmath.inf
    return Thm2Report(
        w=w,
        n=n,
        exact_part=exact_part,
        partial_sums=tuple(terms),
        total=total,
        k_stop=k_stop,
        converged=converged,
        residual_bound=bound,
        tol=tol_frac,
    )


# ---------------------------------------------------------------------
# Root extraction (simultaneous Aberth iteration) and diagnostics
# ---------------------------------------------------------------------

_ABERTH_MAX_ITER = 500
_SEED_ANGLE_OFFSET = 0.4  # fixed phase offset; breaks symmetric stalls, deterministic


def roots(poly, precision: int = 128) -> list:
    """All complex roots of a nonzero polynomial, multiplicity-aware.

    Exact inputs (PolyX / ZetaPoly) are trimmed and made monic exactly
    before any rounding; roots at the origin are split off exactly.  The
    returned roots carry residuals |P(root)| below 2^(-precision/2)
    times the sup norm of the monic coefficients, and are sorted by
    (real, imaginary) part for deterministic output.
    """
    if precision < 8:
        raise InputError("precision must be at least 8 bits")
    exact = _exact_coeffs(poly)
    with mp.workprec(precision + 32):
        if exact is not None:
            deg = len(exact) - 1
            while deg >= 0 and exact[deg].is_zero():
                deg -= 1
            if deg < 0:
                raise InputError("the zero polynomial has no root set")
            exact = exact[: deg + 1]
            origin = 0
            while exact[origin].is_zero():
                origin += 1
            lead = exact[-1]
            monic = [c / lead for c in exact[origin:]]
            coeffs = [_to_mpc(c) for c in monic]
        else:
            coeffs = [mpmath.mpc(c) for c in poly.coeffs]
            deg = len(coeffs) - 1
            while deg >= 0 and coeffs[deg] == 0:
                deg -= 1
            if deg < 0:
                raise InputError("the zero polynomial has no root set")
            origin = 0
            coeffs = [c / coeffs[deg] for c in coeffs[: deg + 1]]
        found = [mpmath.mpc(0)] * origin
        if len(coeffs) > 1:
            found += _aberth(coeffs, precision)
        return sorted(found, key=lambda z: (mpmath.re(z), mpmath.im(z)))


def _exact_coeffs(poly):
    coeffs = getattr(poly, "coeffs", poly)
    if all(isinstance(c, GaussianRational) for c in coeffs):
        return list(coeffs)
    return None


def _to_mpc(c: GaussianRational) -> mpmath.mpc:
    return mpmath.mpc(
        mpmath.mpf(c.re.numerator) / mpmath.mpf(c.re.denominator),
        mpmath.mpf(c.im.numerator) / mpmath.mpf(c.im.denominator),
    )


def _aberth(coeffs: list, precision: int) -> list:
    """Aberth-Ehrlich simultaneous iteration on a monic coefficient list."""
    d = len(coeffs) - 1
    norm = max(max(abs(c) for c in coeffs), mpmath.mpf(1))
    target = mpmath.mpf(2) ** (-(precision // 2)) * norm
    radius = 1 + max(abs(c) for c in coeffs[:-1])
    z = [
        radius * mpmath.exp(mpmath.mpc(0, 2 * mpmath.pi * j / d + _SEED_ANGLE_OFFSET))
        for j in range(d)
    ]
    tiny = mpmath.mpf(2) ** (-precision - 16)
    for _ in range(_ABERTH_MAX_ITER):
        residual = mpmath.mpf(0)
        for j in range(d):
            p, dp = _horner2(coeffs, z[j])
            residual = max(residual, abs(p))
            if p == 0:
                continue
            if dp == 0:
                z[j] = z[j] + tiny
                p, dp = _horner2(coeffs, z[j])
            newton = p / dp
            ssum = mpmath.mpc(0)
            for l in range(d):
                if l == j:
                    continue
                diff = z[j] - z[l]
                if diff == 0:
                    diff = tiny
                ssum += 1 / diff
            denom = 1 - newton * ssum
            if denom == 0:
                denom = tiny
            z[j] = z[j] - newton / denom
        if residual < target:
            return z
    # final certification pass
    if max(abs(_horner2(coeffs, zj)[0]) for zj in z) < target:
        return z
    raise PrecisionError(
        f"root iteration failed to certify residuals below {mpmath.nstr(target, 5)}"
    )


def _horner2(coeffs: list, x):
    """Evaluate p(x) and p'(x) together."""
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


@dataclass(frozen=True)
class RootCheckReport:
    """Deviation of each root from the critical line or the unit circle."""

    mode: str
    roots: tuple
    deviations: tuple
    max_deviation: mpmath.mpf
    tol: Fraction
    passed: bool

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "passed": self.passed,
            "max_deviation": mpmath.nstr(self.max_deviation, 12),
            "tol": str(self.tol),
            "roots": [
                [mpmath.nstr(mpmath.re(z), 20), mpmath.nstr(mpmath.im(z), 20)]
                for z in self.roots
            ],
        }


def rh_check(poly, mode: str, tol: TolLike = "1e-8", precision: int = 128) -> RootCheckReport:
    """Check whether all roots lie on Re = 1/2 (``critical_line``) or on
    |X| = 1 (``unit_circle``), up to ``tol``."""
    if mode not in ("critical_line", "unit_circle"):
        raise InputError(f"unknown mode {mode!r}")
    tol_frac = as_tolerance(tol)
    rts = roots(poly, precision=precision)
    with mp.workprec(precision + 32):
        if mode == "critical_line":
            devs = tuple(abs(mpmath.re(z) - mpmath.mpf(1) / 2) for z in rts)
        else:
            devs = tuple(abs(abs(z) - 1) for z in rts)
        max_dev = max(devs) if devs else mpmath.mpf(0)
        bound = mpmath.mpf(tol_frac.numerator) / mpmath.mpf(tol_frac.denominator)
        return RootCheckReport(
            mode=mode,
            roots=tuple(rts),
            deviations=devs,
            max_deviation=max_dev,
            tol=tol_frac,
            passed=bool(max_dev < bound),
        )


# ---------------------------------------------------------------------
# Hilbert-polynomial hypotheses
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertReport:
    """Whether Z has integer coefficients and a positive leading term.

    When both hold (and the source R satisfies the Fricke-type
    symmetry), Z is a Hilbert polynomial; no graded-algebra certificate
    is attempted here.
    """

    integer_coefficients: bool
    positive_leading: bool
    satisfied: bool
    detail: str

    def to_dict(self) -> dict:
        return {
            "integer_coefficients": self.integer_coefficients,
            "positive_leading": self.positive_leading,
            "satisfied": self.satisfied,
            "detail": self.detail,
        }


def hilbert_hypotheses(Z: ZetaPoly) -> HilbertReport:
    integral = all(c.is_integer() for c in Z.coeffs)
    deg = Z.degree()
    positive = deg >= 0 and Z.coeffs[deg].is_real() and Z.coeffs[deg].re > 0
    satisfied = integral and positive
    if satisfied:
        detail = (
            "integer coefficients with positive leading term: Z is a Hilbert "
            "polynomial provided R satisfies the Fricke-type symmetry"
        )
    else:
        reasons = []
        if not integral:
            bad = next(c for c in Z.coeffs if not c.is_integer())
            reasons.append(f"non-integer coefficient {bad}")
        if not positive:
            reasons.append("leading term not a positive real")
        detail = "; ".join(reasons)
    return HilbertReport(
        integer_coefficients=integral,
        positive_leading=positive,
        satisfied=satisfied,
        detail=detail,
    )
