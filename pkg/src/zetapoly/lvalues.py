"""High-precision numerics: Fourier coefficients, critical L-values, and
the numeric period polynomial and zeta-polynomial.

The completed L-function Lambda(f, s) = (sqrt(N)/2pi)^s Gamma(s) L(f, s)
is evaluated by the exponentially convergent symmetric series split at
the Fricke fixed point y = 1:

    Lambda(f, s) = sum_{n>=1} a_n [ x_n^-s Gamma(s, x_n)
                                    + eps i^k x_n^-(k-s) Gamma(k-s, x_n) ],

with x_n = 2 pi n / sqrt(N) and Gamma(r, x) the upper incomplete gamma
function, which for integer r >= 1 has the finite closed form
(r-1)! e^-x sum_{t<r} x^t / t!.  All scalars are mpmath values under an
explicit working precision; summation order is fixed (ascending n,
ascending t) so results are reproducible bit for bit at fixed precision.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

import mpmath
from mpmath import mp

from zetapoly.errors import InputError, PrecisionError
from zetapoly.rv import _basis_coeffs

GUARD_BITS = 16
CACHE_ENV_VAR = "ZETAPOLY_CACHE_DIR"


# ---------------------------------------------------------------------
# Newform data
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class NewformData:
    """Level, even weight, Fricke eigenvalue, and integer Fourier coefficients.

    ``an[0]`` is a_1 and must equal 1 (normalized eigenform).  The Fricke
    eigenvalue is trusted input; cross-check it with
    ``fricke_sign_consistent``, which compares against an
    eigenvalue-independent evaluation.
    """

    level: int
    weight: int
    fricke: int
    an: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        if self.level < 1:
            raise InputError(f"level must be positive, got {self.level}")
        if self.weight < 4 or self.weight % 2:
            raise InputError(f"weight must be an even integer >= 4, got {self.weight}")
        if self.fricke not in (1, -1):
            raise InputError(f"fricke eigenvalue must be +1 or -1, got {self.fricke}")
        an = tuple(int(a) for a in self.an)
        if not an or an[0] != 1:
            raise InputError("coefficients must start with a_1 = 1")
        object.__setattr__(self, "an", an)

    @property
    def w(self) -> int:
        return self.weight - 2

    def coefficient(self, n: int) -> int:
        if not 1 <= n <= len(self.an):
            raise InputError(f"coefficient a_{n} not available (have {len(self.an)})")
        return self.an[n - 1]

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "weight": self.weight,
            "fricke": self.fricke,
            "an": [str(a) for a in self.an],
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NewformData":
        if not isinstance(data, dict):
            raise InputError("newform payload must be a JSON object")
        try:
            return cls(
                level=int(data["level"]),
                weight=int(data["weight"]),
                fricke=int(data["fricke"]),
                an=tuple(int(str(a)) for a in data["an"]),
                label=str(data.get("label", "")),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"bad newform payload: {exc}") from exc


# ---------------------------------------------------------------------
# Fourier coefficients of the weight-12 level-1 form
# ---------------------------------------------------------------------


def _cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "zetapoly"


def _eta_power_24(nmax: int) -> list[int]:
    """Integer coefficients of prod_{n>=1} (1 - q^n)^24 up to degree nmax-1."""
    L = nmax
    e = [0] * L
    e[0] = 1
    j = 1
    while j * (3 * j - 1) // 2 < L:
        sign = -1 if j % 2 else 1
        e[j * (3 * j - 1) // 2] += sign
        g2 = j * (3 * j + 1) // 2
        if g2 < L:
            e[g2] += sign
        j += 1

    def mul(a: list[int], b: list[int]) -> list[int]:
        out = [0] * L
        for i, ai in enumerate(a):
            if ai:
                top = L - i
                for t, bt in enumerate(b[:top]):
                    if bt:
                        out[i + t] += ai * bt
        return out

    e2 = mul(e, e)
    e3 = mul(e2, e)
    e6 = mul(e3, e3)
    e12 = mul(e6, e6)
    return mul(e12, e12)


def delta_coefficients(nmax: int, use_cache: bool = True) -> list[int]:
    """tau(1), ..., tau(nmax): coefficients of q prod (1-q^n)^24, exact.

    Values are cached on disk (JSON with an nmax header) under the
    directory named by ZETAPOLY_CACHE_DIR, since the eta-power expansion
    dominates the cost of high-precision runs.
    """
    if nmax < 1:
        raise InputError(f"nmax must be >= 1, got {nmax}")
    cache_file = _cache_dir() / "tau.json"
    if use_cache:
        try:
            payload = json.loads(cache_file.read_text())
            if int(payload["nmax"]) >= nmax:
                return [int(v) for v in payload["tau"][:nmax]]
        except (OSError, ValueError, KeyError, TypeError):
            pass
    tau = _eta_power_24(nmax)
    if use_cache:
        try:
            cache_file.parent.mkdir(parents=True, exist_ok=True)
            cache_file.write_text(
                json.dumps({"nmax": nmax, "tau": [str(v) for v in tau]})
            )
        except OSError:
            pass
    return tau


def delta_newform(prec: int = 128) -> NewformData:
    """The unique weight-12 level-1 newform, with enough coefficients
    for completed-L work at ``prec`` bits."""
    nmax = required_nmax(1, 12, prec)
    return NewformData(
        level=1,
        weight=12,
        fricke=1,
        an=tuple(delta_coefficients(nmax)),
        label="1.12.a.a",
    )


# ---------------------------------------------------------------------
# Completed L-values
# ---------------------------------------------------------------------


def required_nmax(N: int, k: int, prec: int, guard: int = GUARD_BITS) -> int:
    """Smallest nmax whose series tail is provably below 2^-(prec+guard).

    Uses |a_n| <= d(n) n^((k-1)/2) <= n^((k+1)/2) and, for x >= 2r,
    Gamma(r, x) <= 2 x^(r-1) e^-x, so the n-th term is at most
    4 n^((k+1)/2) e^(-c n) with c = 2 pi / sqrt(N); the tail from m+1 is
    bounded by a geometric series once those estimates apply.
    """
    c = 2 * math.pi / math.sqrt(N)
    p = (k + 1) / 2
    target = -(prec + guard) * math.log(2)
    m = max(1, math.ceil(2 * (k - 1) / c), math.ceil(1 / c))
    while True:
        m += 1
        # ratio of consecutive term bounds; < 1 from some m on since c > 0
        q = math.exp(-c + p * math.log1p(1.0 / (m + 1)))
        if q >= 1.0:
            continue
        log_tail = math.log(4) + p * math.log(m + 1) - c * (m + 1) - math.log(1 - q)
        if log_tail <= target:
            return m


def _upper_gamma_int(r: int, x, exp_neg_x):
    """Gamma(r, x) = (r-1)! e^-x sum_{t<r} x^t/t! for integer r >= 1."""
    acc = mpmath.mpf(1)
    term = mpmath.mpf(1)
    for t in range(1, r):
        term = term * x / t
        acc += term
    return mpmath.factorial(r - 1) * exp_neg_x * acc


def completed_l(f: NewformData, s: int, prec: int = 128) -> mpmath.mpf:
    """Lambda(f, s) for integer s in the critical range [1, k-1].

    The result is certified to within 2^-(prec+guard) plus summation
    roundoff at prec+32 working bits.  Raises PrecisionError when the
    supplied coefficient list is too short for the target precision.
    """
    k = f.weight
    if not isinstance(s, int) or not 1 <= s <= k - 1:
        raise InputError(f"s must be an integer in [1, {k - 1}], got {s!r}")
    need = required_nmax(f.level, k, prec)
    if len(f.an) < need:
        raise PrecisionError(
            f"need Fourier coefficients a_1..a_{need} for {prec}-bit work, "
            f"got only {len(f.an)}"
        )
    sign = f.fricke * (-1) ** (k // 2)  # eps * i^k, real for even k
    with mp.workprec(prec + 32):
        c = 2 * mpmath.pi / mpmath.sqrt(f.level)
        total = mpmath.mpf(0)
        for n in range(1, need + 1):
            x = c * n
            e = mpmath.exp(-x)
            g_s = _upper_gamma_int(s, x, e)
            g_ks = _upper_gamma_int(k - s, x, e)
            total += f.an[n - 1] * (g_s / x**s + sign * g_ks / x ** (k - s))
        return +total


def l_value(f: NewformData, s: int, prec: int = 128) -> mpmath.mpf:
    """L(f, s) = Lambda(f, s) (2 pi / sqrt(N))^s / (s-1)!."""
    lam = completed_l(f, s, prec)
    with mp.workprec(prec + 32):
        factor = (2 * mpmath.pi / mpmath.sqrt(f.level)) ** s / mpmath.factorial(s - 1)
        return +(lam * factor)


def dirichlet_lambda_edge(f: NewformData, prec: int = 64) -> mpmath.mpf:
    """Lambda(f, k-1) via the plain Dirichlet series, ignoring eps.

    At s = k-1 the series converges absolutely (|a_n| << n^(k+1)/2), so
    this gives an eps-independent reference value, accurate to roughly
    the truncation tail of the supplied coefficient list.  Used to
    cross-check the supplied Fricke eigenvalue: the symmetric split
    series satisfies its own functional equation for either sign, so a
    sign error is only visible against an independent route.
    """
    k = f.weight
    s = k - 1
    with mp.workprec(prec + 32):
        lser = mpmath.mpf(0)
        for n in range(1, len(f.an) + 1):
            lser += mpmath.mpf(f.an[n - 1]) / mpmath.mpf(n) ** s
        factor = (mpmath.sqrt(f.level) / (2 * mpmath.pi)) ** s * mpmath.factorial(s - 1)
        return +(lser * factor)


def fricke_sign_consistent(f: NewformData, prec: int = 64, rel_tol: str = "1e-3") -> bool:
    """True when the split-series Lambda agrees with the eps-independent
    Dirichlet route at s = k-1; a flipped eigenvalue shows up as a
    discrepancy far above the series truncation error."""
    with mp.workprec(prec + 32):
        sym = completed_l(f, f.weight - 1, prec)
        ref = dirichlet_lambda_edge(f, prec)
        return bool(abs(sym - ref) <= mpmath.mpf(rel_tol) * abs(ref))


# ---------------------------------------------------------------------
# Numeric polynomials
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class NumericPoly:
    """Dense polynomial with mpmath coefficients at a stated precision.

    ``coeff_err`` (optional) carries per-coefficient absolute error
    bounds propagated from the L-value computation.
    """

    w: int
    coeffs: tuple
    prec: int
    coeff_err: tuple | None = None

    def __post_init__(self):
        if len(self.coeffs) != self.w + 1:
            raise InputError(
                f"expected {self.w + 1} coefficients for w={self.w}, got {len(self.coeffs)}"
            )

    def evaluate(self, x):
        acc = mpmath.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_dict(self) -> dict:
        digits = int(self.prec * 0.3010) + 3
        return {
            "w": self.w,
            "precision": self.prec,
            "coeffs": [mpmath.nstr(c, digits) for c in self.coeffs],
        }


def build_r(f: NewformData, prec: int = 128) -> NumericPoly:
    """The numeric period polynomial, assembled from critical L-values.

    Writing the defining L-value sum through the completed L-function
    collapses each coefficient to an exact binomial multiple:
    coefficient of X^n is C(w, n) * Lambda(f, w+1-n).
    """
    w = f.w
    lambdas = [completed_l(f, s, prec) for s in range(1, f.weight)]
    with mp.workprec(prec + 32):
        err_unit = mpmath.mpf(2) ** (-(prec + 8))
        coeffs = []
        errs = []
        for n in range(w + 1):
            binom = math.comb(w, n)
            lam = lambdas[w - n]  # Lambda(f, w+1-n)
            coeffs.append(+(binom * lam))
            errs.append(binom * err_unit * max(1, abs(lam)))
        return NumericPoly(w=w, coeffs=tuple(coeffs), prec=prec, coeff_err=tuple(errs))


def numeric_rv(Rnum: NumericPoly) -> NumericPoly:
    """The forward transform with mpmath scalars: same binomial basis as
    the exact route, with error bounds propagated per coefficient."""
    w = Rnum.w
    prec = Rnum.prec
    with mp.workprec(prec + 32):
        acc = [mpmath.mpf(0)] * (w + 1)
        errs = [mpmath.mpf(0)] * (w + 1)
        for j in range(w + 1):
            aj = Rnum.coeffs[j]
            ej = Rnum.coeff_err[j] if Rnum.coeff_err else mpmath.mpf(0)
            for t, b in enumerate(_basis_coeffs(w, j)):
                if not b:
                    continue
                bv = mpmath.mpf(b.numerator) / mpmath.mpf(b.denominator)
                acc[t] = acc[t] + aj * bv
                errs[t] = errs[t] + abs(bv) * ej
        return NumericPoly(
            w=w,
            coeffs=tuple(+c for c in acc),
            prec=prec,
            coeff_err=tuple(+e for e in errs),
        )


def numeric_fricke_max_residual(Rnum: NumericPoly, eps: int) -> mpmath.mpf:
    """max_j |a_j + eps i^w a_{w-j}| for a numeric period polynomial."""
    if eps not in (1, -1):
        raise InputError(f"eps must be +1 or -1, got {eps!r}")
    w = Rnum.w
    phase = eps * (-1) ** (w // 2)  # i^w is real for even w
    with mp.workprec(Rnum.prec + 32):
        return max(
            abs(Rnum.coeffs[j] + phase * Rnum.coeffs[w - j]) for j in range(w + 1)
        )
