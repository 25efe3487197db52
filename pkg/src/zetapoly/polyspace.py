"""Polynomials in the period variable X and the relations they satisfy.

The space V_w of polynomials of degree at most w carries a weight -w
action of 2x2 matrices (the slash operator).  This module implements
that action exactly over Q(i), the residuals of the Fricke relation and
of the Eichler-Shimura relations (both in the classical variable and in
the rescaled variable), parity splitting, the change of variable between
the two normalizations, and the exact nullspace computation for the
space W_w cut out by the relations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from zetapoly.errors import ConsistencyError, ExactnessError, InputError
from zetapoly.exactnum import I, ONE, ZERO, GaussianRational, qi

# ---------------------------------------------------------------------
# Dense polynomials in X over Q(i)
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class PolyX:
    """A polynomial of degree <= w in the period variable X.

    ``coeffs`` has exactly w+1 entries in ascending powers; high entries
    may be zero.  The weight parameter w is metadata and is never
    inferred from the degree (a polynomial of degree 9 may live in V_10).
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

    # -- construction ----------------------------------------------------

    @classmethod
    def make(cls, w: int, values: Sequence) -> "PolyX":
        """Build from any coefficient sequence of length <= w+1 (zero-padded)."""
        vals = [GaussianRational.coerce(v) for v in values]
        if len(vals) > w + 1:
            raise InputError(f"{len(vals)} coefficients exceed degree bound w={w}")
        vals += [ZERO] * (w + 1 - len(vals))
        return cls(w, tuple(vals))

    @classmethod
    def zero(cls, w: int) -> "PolyX":
        return cls.make(w, [])

    # -- basic queries -----------------------------------------------------

    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        for j in range(self.w, -1, -1):
            if not self.coeffs[j].is_zero():
                return j
        return -1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def evaluate(self, x: GaussianRational) -> GaussianRational:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "PolyX") -> "PolyX":
        self._require_same_space(other)
        return PolyX(self.w, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "PolyX") -> "PolyX":
        self._require_same_space(other)
        return PolyX(self.w, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "PolyX":
        return PolyX(self.w, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "PolyX":
        c = GaussianRational.coerce(c)
        return PolyX(self.w, tuple(c * a for a in self.coeffs))

    def _require_same_space(self, other: "PolyX"):
        if self.w != other.w:
            raise InputError(f"mixing V_{self.w} and V_{other.w} polynomials")

    # -- parity ------------------------------------------------------------

    def parity_split(self) -> tuple["PolyX", "PolyX"]:
        """Return (even part, odd part); they sum to the polynomial."""
        even = [c if j % 2 == 0 else ZERO for j, c in enumerate(self.coeffs)]
        odd = [c if j % 2 == 1 else ZERO for j, c in enumerate(self.coeffs)]
        return PolyX(self.w, tuple(even)), PolyX(self.w, tuple(odd))

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "w": self.w,
            "variable": "X",
            "coeffs": [list(c.to_str_pair()) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PolyX":
        w, coeffs = _parse_poly_dict(data, expect_variable="X")
        return cls(w, coeffs)


def _parse_poly_dict(data: dict, expect_variable: str) -> tuple[int, tuple]:
    """Shared JSON-schema validation for PolyX/ZetaPoly payloads."""
    if not isinstance(data, dict):
        raise InputError("polynomial payload must be a JSON object")
    try:
        w = data["w"]
        raw = data["coeffs"]
    except KeyError as exc:
        raise InputError(f"polynomial payload missing key {exc}") from exc
    if not isinstance(w, int):
        raise InputError(f"'w' must be an integer, got {w!r}")
    variable = data.get("variable")
    if variable is not None and variable != expect_variable:
        raise InputError(
            f"expected a polynomial in {expect_variable!r}, got variable={variable!r}"
        )
    if not isinstance(raw, list) or len(raw) != w + 1:
        raise InputError(f"'coeffs' must list exactly w+1 = {w + 1} entries")
    coeffs = []
    for entry in raw:
        if isinstance(entry, (list, tuple)) and len(entry) == 2:
            try:
                coeffs.append(GaussianRational(str(entry[0]), str(entry[1])))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad coefficient entry {entry!r}: {exc}") from exc
        else:
            raise InputError(f"coefficient entries must be [re, im] pairs, got {entry!r}")
    return w, tuple(coeffs)


# ---------------------------------------------------------------------
# 2x2 matrices and the slash action
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix over Q(i) with nonzero determinant."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    d: GaussianRational

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, GaussianRational.coerce(getattr(self, name)))
        if self.det().is_zero():
            raise InputError("matrix is not invertible")

    @classmethod
    def of(cls, a, b, c, d) -> "Mat2":
        return cls(
            GaussianRational.coerce(a),
            GaussianRational.coerce(b),
            GaussianRational.coerce(c),
            GaussianRational.coerce(d),
        )

    def det(self) -> GaussianRational:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


S_MAT = Mat2.of(0, -1, 1, 0)
U_MAT = Mat2.of(1, -1, 1, 0)

# Matrices realizing the rescaled-variable relations; all have det 1,
# so the slash normalization factor is exactly 1.
_RES1_MAT = Mat2.of(0, -I, -I, 0)
_RES2_MAT_B = Mat2.of(1, -I, -I, 0)
_RES2_MAT_C = Mat2.of(0, -I, -I, -1)


def slash(P: PolyX, g: Mat2) -> PolyX:
    """The weight -w slash action det(g)^(-w/2) (cX+d)^w P((aX+b)/(cX+d)).

    Exact over Q(i): since w is even, det(g)^(-w/2) is an integer power
    of the determinant and no square root is ever taken.
    """
    w = P.w
    factor = g.det() ** (-(w // 2))
    num_pows = [(ONE,)]
    for _ in range(w):
        num_pows.append(_mul_linear(num_pows[-1], g.a, g.b))
    den_pows = [(ONE,)]
    for _ in range(w):
        den_pows.append(_mul_linear(den_pows[-1], g.c, g.d))
    out = [ZERO] * (w + 1)
    for j, aj in enumerate(P.coeffs):
        if aj.is_zero():
            continue
        term = _poly_mul(num_pows[j], den_pows[w - j])
        if len(term) > w + 1:
            raise ConsistencyError("slash produced degree above the weight bound")
        for t, c in enumerate(term):
            out[t] = out[t] + aj * c
    return PolyX(w, tuple(GaussianRational.coerce(factor) * c for c in out))


def _mul_linear(coeffs: tuple, a: GaussianRational, b: GaussianRational) -> tuple:
    """Multiply a dense coefficient tuple by (a*X + b)."""
    out = [ZERO] * (len(coeffs) + 1)
    for t, c in enumerate(coeffs):
        if c.is_zero():
            continue
        out[t] = out[t] + c * b
        out[t + 1] = out[t + 1] + c * a
    return tuple(out)


def _poly_mul(p: tuple, q: tuple) -> tuple:
    out = [ZERO] * (len(p) + len(q) - 1)
    for ti, ci in enumerate(p):
        if ci.is_zero():
            continue
        for tj, cj in enumerate(q):
            if not cj.is_zero():
                out[ti + tj] = out[ti + tj] + ci * cj
    return tuple(out)


# ---------------------------------------------------------------------
# Relation residuals
# ---------------------------------------------------------------------


def fricke_residual(R: PolyX, eps: int) -> PolyX:
    """Residual of R(X) + eps * i^w * X^w R(1/X), computed coefficientwise.

    The reversal X^w R(1/X) swaps coefficient j with w-j, so the residual
    coefficients are a_j + eps i^w a_{w-j}; the zero polynomial is
    returned exactly when the Fricke relation holds.
    """
    if eps not in (1, -1):
        raise InputError(f"eps must be +1 or -1, got {eps!r}")
    w = R.w
    phase = GaussianRational(eps) * I**w
    res = [R.coeffs[j] + phase * R.coeffs[w - j] for j in range(w + 1)]
    return PolyX(w, tuple(res))


def rescaled_es1_residual(R: PolyX) -> PolyX:
    """Residual of the two-term relation R(X) + (-iX)^w R(1/X)."""
    return R + slash(R, _RES1_MAT)


def rescaled_es2_residual(R: PolyX) -> PolyX:
    """Residual of the three-term relation
    R(X) + (-iX)^w R((X-i)/(-iX)) + (-iX-1)^w R(-i/(-iX-1)).

    Each substitution is expanded exactly over Q(i); every term is a
    polynomial of degree <= w because the matrices have determinant 1.
    """
    return R + slash(R, _RES2_MAT_B) + slash(R, _RES2_MAT_C)


def es_residuals(r: PolyX) -> tuple[PolyX, PolyX]:
    """Residuals of the classical relations r|(1+S) and r|(1+U+U^2)."""
    res_s = r + slash(r, S_MAT)
    res_u = r + slash(r, U_MAT) + slash(r, U_MAT @ U_MAT)
    return res_s, res_u


# ---------------------------------------------------------------------
# Change of variable between the classical and rescaled normalizations
# ---------------------------------------------------------------------


def _exact_sqrt_level(N: int) -> int:
    if N < 1:
        raise InputError(f"level must be a positive integer, got {N}")
    t = math.isqrt(N)
    if t * t != N:
        raise ExactnessError(
            f"level {N} has no rational square root; the exact change of "
            "variable needs a perfect-square level (use the numeric pipeline)"
        )
    return t


def r_to_big_r(r: PolyX, N: int, k: int) -> PolyX:
    """Rescale r(X) to R(X) = (sqrt(N)/i)^(k-1) r(X / (i sqrt(N))), exactly.

    Coefficientwise: R_j = r_j * sqrt(N)^(w+1-j) * i^(-(w+1+j)).
    """
    w = _check_weight(r, N, k)
    t = _exact_sqrt_level(N)
    out = [
        r.coeffs[j] * qi(t ** (w + 1 - j)) * I ** (-(w + 1 + j))
        for j in range(w + 1)
    ]
    return PolyX(w, tuple(out))


def big_r_to_r(R: PolyX, N: int, k: int) -> PolyX:
    """Inverse change of variable; round-trips exactly with r_to_big_r."""
    w = _check_weight(R, N, k)
    t = _exact_sqrt_level(N)
    out = [
        R.coeffs[j] * qi(Fraction(1, t**(w + 1 - j))) * I ** (w + 1 + j)
        for j in range(w + 1)
    ]
    return PolyX(w, tuple(out))


def _check_weight(P: PolyX, N: int, k: int) -> int:
    if k % 2 or k < 4:
        raise InputError(f"weight k must be an even integer >= 4, got {k}")
    if P.w != k - 2:
        raise InputError(f"polynomial has w={P.w} but weight k={k} implies w={k - 2}")
    return P.w


# ---------------------------------------------------------------------
# The space W_w cut out by the classical relations
# ---------------------------------------------------------------------


def wspace_basis(w: int) -> tuple[list[PolyX], int, int]:
    """Exact rational basis of W_w = {P : P|(1+S) = P|(1+U+U^2) = 0},
    together with the dimensions of its even and odd parity parts.

    The stacked linear system is solved by exact rational elimination
    with pivots chosen at the lowest available column index, so the
    emitted basis is deterministic.
    """
    if w < 2 or w % 2:
        raise InputError(f"w must be an even integer >= 2, got {w}")
    cols = list(range(w + 1))
    rows = _relation_rows(w, cols)
    basis_vecs = _rational_nullspace(rows, len(cols))
    basis = [
        PolyX(w, tuple(GaussianRational(v) for v in vec)) for vec in basis_vecs
    ]
    dim_plus = len(_rational_nullspace(_relation_rows(w, cols[0::2]), len(cols[0::2])))
    dim_minus = len(_rational_nullspace(_relation_rows(w, cols[1::2]), len(cols[1::2])))
    return basis, dim_plus, dim_minus


def _relation_rows(w: int, monomials: list[int]) -> list[list[Fraction]]:
    """Rows of the stacked (1+S, 1+U+U^2) system on the given monomials."""
    images = []
    for j in monomials:
        e = PolyX.make(w, [0] * j + [1])
        res_s, res_u = es_residuals(e)
        images.append((res_s, res_u))
    rows = []
    for res_index in range(2):
        for t in range(w + 1):
            row = []
            for img in images:
                c = img[res_index].coeffs[t]
                if not c.is_real():
                    raise ConsistencyError("integer matrices gave a complex action")
                row.append(c.re)
            rows.append(row)
    return rows


def _rational_nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Nullspace basis of a rational matrix via reduced row echelon form.

    Basis vectors are scaled to primitive integer form with a positive
    first nonzero entry, one per free column in ascending order.
    """
    matrix = [list(row) for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        sel = None
        for r in range(rank, len(matrix)):
            if matrix[r][col]:
                sel = r
                break
        if sel is None:
            continue
        matrix[rank], matrix[sel] = matrix[sel], matrix[rank]
        inv = 1 / matrix[rank][col]
        matrix[rank] = [v * inv for v in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col]:
                f = matrix[r][col]
                matrix[r] = [v - f * p for v, p in zip(matrix[r], matrix[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -matrix[r][fc]
        basis.append(_primitive(vec))
    return basis


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    denom = math.lcm(*(v.denominator for v in vec))
    ints = [int(v * denom) for v in vec]
    g = math.gcd(*ints)
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]
