import math
import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from conftest import rand_polyx, symmetric_polyx, violating_polyx
from zetapoly.errors import InputError
from zetapoly.exactnum import GaussianRational, I, ONE, ZERO, qi
from zetapoly.polyspace import PolyX
from zetapoly.rv import ZetaPoly, rv_forward, series_coeffs
from zetapoly.zeta import (
    as_tolerance,
    functional_eq_residual,
    hilbert_hypotheses,
    laurent_coeffs,
    rh_check,
    roots,
    thm2_residual,
)

R_DELTA_MINUS = PolyX.make(10, [0, 4, 0, 25, 0, 42, 0, 25, 0, 4, 0])
R_DELTA_PLUS = PolyX.make(
    10, [Fraction(36, 691), 0, 1, 0, 3, 0, 3, 0, 1, 0, Fraction(36, 691)]
)


# -- independent oracles -------------------------------------------------


def literal_term(Z: ZetaPoly, n: int, k: int) -> GaussianRational:
    """The per-k term of the displayed triple sum, with no pruning."""
    w = Z.w
    K = k + n
    total = ZERO
    inv_one_minus_i = qi(1, -1).inverse()
    for m in range(K + 1):
        for j in range(K - m + 1):
            c = (
                math.comb(K, n)
                * math.comb(m + w, w)
                * math.comb(w + 1, j)
                * (-1) ** (j + 1)
            )
            total = total + (
                GaussianRational(c)
                * (-I) ** k
                * inv_one_minus_i ** (m + w + 1)
                * Z.at_int(m + j - K)
            )
    return total


def exact_identity_value(R: PolyX, n: int) -> GaussianRational:
    """Closed form of the full identity value: the infinite sum equals
    [z^n] of -R(z-i)/(1-z)^(w+1), an exact finite computation."""
    w = R.w
    Z = rv_forward(R)
    zv = series_coeffs(Z, max(w, n) + 1)
    princ = laurent_coeffs(w, n, -1)
    exact = zv[n] + ((-I) ** w) * sum(
        (princ.coeff(-m) * zv[m - 1] for m in range(1, n + 2)), ZERO
    )
    recentered = [ZERO] * (w + 1)
    for p, ap in enumerate(R.coeffs):
        if ap.is_zero():
            continue
        for t in range(p + 1):
            recentered[t] = recentered[t] + ap * math.comb(p, t) * (-I) ** (p - t)
    third = ZERO
    for p in range(min(n, w) + 1):
        third = third - recentered[p] * math.comb(w + n - p, n - p)
    return exact + third


# -- functional equation -------------------------------------------------


class TestFunctionalEquation:
    def test_delta_minus(self):
        Z = rv_forward(R_DELTA_MINUS)
        assert functional_eq_residual(Z, 1).is_zero()

    def test_small_palindromic(self):
        Z = rv_forward(PolyX.make(2, [1, 1, 1]))
        assert functional_eq_residual(Z, 1).is_zero()

    def test_plain_s(self):
        res = functional_eq_residual(ZetaPoly.make(2, [0, 1]), 1)
        assert res == ZetaPoly.make(2, [-1, 2])  # 2s - 1

    def test_eps_validated(self):
        with pytest.raises(InputError):
            functional_eq_residual(ZetaPoly.make(2, [1]), 0)

    def test_random_symmetric_and_violating(self):
        rng = random.Random(57)
        for w in (2, 4, 8, 12, 16):
            for eps in (1, -1):
                for _ in range(25):
                    good = symmetric_polyx(rng, w, eps)
                    assert functional_eq_residual(rv_forward(good), eps).is_zero()
                    bad = violating_polyx(rng, w, eps)
                    assert not functional_eq_residual(rv_forward(bad), eps).is_zero()


# -- Laurent coefficients -------------------------------------------------


class TestLaurent:
    def test_pole_coefficient_closed_form(self):
        for w in (2, 4, 6, 8, 10, 12):
            for n in (1, 2, 3):
                lc = laurent_coeffs(w, n, 0)
                assert lc.coeff(-(n + 1)) == -(I ** (-w))
                if w % 4 == 0:
                    assert lc.coeff(-(n + 1)) == qi(-1)

    def test_w10_n1_hand_values(self):
        # from the logarithmic derivative of the kernel at 0:
        # G'(0)/G(0) = -11 - i + 11(1+i) = 10i, so a_-1 = G(0) * 10i = 10i
        lc = laurent_coeffs(10, 1, 0)
        assert lc.coeff(-2) == ONE
        assert lc.coeff(-1) == qi(0, 10)

    def test_principal_part_only(self):
        lc = laurent_coeffs(10, 1, -1)
        assert lc.M == -1
        assert len(lc.coeffs) == 2
        with pytest.raises(InputError):
            lc.coeff(0)

    def test_defining_product_reconstruction(self):
        # multiplying back by the denominator must reproduce the numerator
        for (w, n, M) in [(2, 1, 12), (4, 2, 10), (6, 1, 8)]:
            lc = laurent_coeffs(w, n, M)
            denom = _poly_mul_qi(
                [(I ** (n + 1)) * c for c in _linear_pow(qi(1, -1), I, w + 1)], []
            )
            numer = _poly_mul_qi(
                _linear_pow(qi(-1), ONE, w + 1), _linear_pow(ONE, I, n)
            )
            # product of the series with x^(n+1) * bracket
            prod = {}
            for midx in range(-(n + 1), M + 1):
                a = lc.coeff(midx)
                if a.is_zero():
                    continue
                for e, d in enumerate(denom):
                    key = midx + n + 1 + e
                    prod[key] = prod.get(key, ZERO) + a * d
            for exp in range(0, M):  # orders certain up to M-1
                want = numer[exp] if exp < len(numer) else ZERO
                assert prod.get(exp, ZERO) == want

    def test_validation(self):
        with pytest.raises(InputError):
            laurent_coeffs(3, 1, 5)
        with pytest.raises(InputError):
            laurent_coeffs(4, 0, 5)
        with pytest.raises(InputError):
            laurent_coeffs(4, 1, -3)


def _linear_pow(a, b, n):
    out = [ONE]
    for _ in range(n):
        nxt = [ZERO] * (len(out) + 1)
        for t, c in enumerate(out):
            nxt[t] = nxt[t] + c * b
            nxt[t + 1] = nxt[t + 1] + c * a
        out = nxt
    return out


def _poly_mul_qi(p, q):
    if not q:
        return p
    out = [ZERO] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        for b, cb in enumerate(q):
            out[a + b] = out[a + b] + ca * cb
    return out


# -- the convergent identity ----------------------------------------------


class TestThm2:
    def test_terms_match_literal_triple_sum(self):
        rng = random.Random(61)
        for w, n in [(2, 1), (2, 2), (4, 1)]:
            Z = rv_forward(rand_polyx(rng, w))
            rep = thm2_residual(Z, n, tol="1e-30", k_max=20, k_min=20)
            for k in range(0, 21, 5):
                assert rep.partial_sums[k] == literal_term(Z, n, k)

    def test_delta_minus_small_n(self):
        Z = rv_forward(R_DELTA_MINUS)
        for n in (1, 2):
            rep = thm2_residual(Z, n, tol="1e-10")
            assert rep.converged
            assert rep.total_below("1e-10")
            assert rep.exact_part + sum(rep.partial_sums, ZERO) == rep.total

    def test_truncated_total_matches_exact_limit_within_bound(self):
        for R, n in [(R_DELTA_MINUS, 1), (PolyX.make(2, [1]), 1), (PolyX.make(2, [0, 1]), 2)]:
            rep = thm2_residual(rv_forward(R), n, tol="1e-12")
            limit = exact_identity_value(R, n)
            gap = (rep.total - limit).norm2()
            bound = Fraction(str(mpmath.nstr(rep.residual_bound, 10)))
            assert gap <= (bound * bound) * Fraction(11, 10)

    def test_identity_value_zero_for_delta_parts(self):
        for R in (R_DELTA_MINUS, R_DELTA_PLUS):
            for n in range(1, 6):
                assert exact_identity_value(R, n).is_zero()

    def test_bad_inputs_yield_nonzero_values(self):
        # R = 1 violates the two-term relation; R = X violates the three-term one
        assert exact_identity_value(PolyX.make(2, [1]), 1) == qi(-3, -2)
        assert exact_identity_value(PolyX.make(2, [0, 1]), 1) == qi(-1, 3)
        for R in (PolyX.make(2, [1]), PolyX.make(2, [0, 1])):
            rep = thm2_residual(rv_forward(R), 1, tol="1e-10")
            assert rep.converged
            assert not rep.total_below("1e-3")

    def test_nonconvergence_reported(self):
        rep = thm2_residual(rv_forward(R_DELTA_MINUS), 1, tol="1e-10", k_max=30)
        assert not rep.converged
        assert rep.k_stop == 30
        assert len(rep.partial_sums) == 31
        assert mpmath.isinf(rep.residual_bound)

    def test_eventual_decay_ratio_below_three_quarters(self):
        rep = thm2_residual(rv_forward(R_DELTA_MINUS), 1, tol="1e-10")
        norms = [t.norm2() for t in rep.partial_sums]
        ratio_sq = Fraction(9, 16)
        for k in range(190, rep.k_stop):
            assert norms[k + 1] < ratio_sq * norms[k]

    def test_only_series_values_enter(self):
        # all Z-arguments are non-positive, so exact_part and terms live in Q(i)
        rep = thm2_residual(rv_forward(R_DELTA_MINUS), 3, tol="1e-8")
        assert isinstance(rep.exact_part, GaussianRational)
        assert all(isinstance(t, GaussianRational) for t in rep.partial_sums)

    def test_validation(self):
        Z = rv_forward(R_DELTA_MINUS)
        with pytest.raises(InputError):
            thm2_residual(Z, 0)
        with pytest.raises(InputError):
            thm2_residual(Z, 1, tol="0")
        with pytest.raises(InputError):
            thm2_residual(Z, 1, tol="-1e-3")

    def test_report_serialization(self):
        rep = thm2_residual(rv_forward(PolyX.make(2, [1, 1, 1])), 1, tol="1e-10")
        d = rep.to_dict()
        assert set(d) >= {"n", "k_stop", "converged", "abs_total", "residual_bound", "total"}


class TestTolerance:
    def test_parsing(self):
        assert as_tolerance("1e-10") == Fraction(1, 10**10)
        assert as_tolerance("0.25") == Fraction(1, 4)
        assert as_tolerance(Fraction(1, 3)) == Fraction(1, 3)
        assert as_tolerance(2) == 2

    def test_rejects_nonpositive_and_garbage(self):
        for bad in ("0", "-1", "abc", None):
            with pytest.raises(InputError):
                as_tolerance(bad)


# -- roots and diagnostics -------------------------------------------------


class TestRoots:
    def test_quadratic(self):
        got = roots(PolyX.make(2, [-1, 0, 1]), precision=64)
        assert [mpmath.nstr(z, 8) for z in got] == ["(-1.0 + 0.0j)", "(1.0 + 0.0j)"]

    def test_critical_quadratic(self):
        Z = ZetaPoly.make(2, [Fraction(1, 2), -1, 1])
        got = roots(Z, precision=96)
        with mp.workprec(128):
            assert all(abs(mpmath.re(z) - 0.5) < mpmath.mpf(2) ** -90 for z in got)

    def test_origin_roots_are_exact(self):
        got = roots(R_DELTA_MINUS, precision=128)
        assert len(got) == 9
        assert any(z == 0 for z in got)

    def test_residual_certificate(self):
        rng = random.Random(71)
        for _ in range(5):
            P = rand_polyx(rng, 6)
            if P.is_zero() or P.degree() < 1:
                continue
            prec = 128
            got = roots(P, precision=prec)
            with mp.workprec(prec + 32):
                cs = [mpmath.mpc(
                    mpmath.mpf(c.re.numerator) / c.re.denominator,
                    mpmath.mpf(c.im.numerator) / c.im.denominator,
                ) for c in P.coeffs[: P.degree() + 1]]
                lead = cs[-1]
                monic = [c / lead for c in cs]
                norm = max(max(abs(c) for c in monic), mpmath.mpf(1))
                for z in got:
                    val = mpmath.mpf(0)
                    for c in reversed(monic):
                        val = val * z + c
                    assert abs(val) < mpmath.mpf(2) ** (-(prec // 2)) * norm

    def test_double_root_multiplicity(self):
        got = roots(PolyX.make(2, [1, -2, 1]), precision=96)
        assert len(got) == 2
        for z in got:
            assert abs(z - 1) < mpmath.mpf("1e-7")

    def test_zero_polynomial_rejected(self):
        with pytest.raises(InputError):
            roots(PolyX.zero(2))

    def test_deterministic(self):
        a = roots(R_DELTA_MINUS, precision=96)
        b = roots(R_DELTA_MINUS, precision=96)
        assert a == b


class TestRhCheck:
    def test_minus_part_fails_unit_circle_with_deviation_one(self):
        rep = rh_check(R_DELTA_MINUS, "unit_circle", tol="1e-8", precision=128)
        assert not rep.passed
        with mp.workprec(64):
            assert abs(rep.max_deviation - 1) < mpmath.mpf(2) ** -40

    def test_scaling_invariance(self):
        Z1 = rv_forward(R_DELTA_MINUS)
        Z3 = rv_forward(R_DELTA_MINUS.scale(3))
        a = rh_check(Z1, "critical_line", tol="1e-8", precision=96)
        b = rh_check(Z3, "critical_line", tol="1e-8", precision=96)
        assert a.roots == b.roots  # exact monic normalization before rounding
        assert a.max_deviation == b.max_deviation

    def test_mode_validated(self):
        with pytest.raises(InputError):
            rh_check(R_DELTA_MINUS, "circle", tol="1e-8")

    def test_report_dict(self):
        rep = rh_check(PolyX.make(2, [-1, 0, 1]), "unit_circle", tol="1e-8", precision=64)
        assert rep.passed
        d = rep.to_dict()
        assert d["mode"] == "unit_circle"
        assert len(d["roots"]) == 2


class TestHilbert:
    def test_delta_minus_fails_integrality(self):
        Z = rv_forward(R_DELTA_MINUS)
        assert Z.coeffs[10] == qi(Fraction(1, 36288))  # the witness coefficient
        rep = hilbert_hypotheses(Z)
        assert not rep.integer_coefficients
        assert not rep.satisfied
        assert "non-integer coefficient" in rep.detail

    def test_integer_positive_passes(self):
        rep = hilbert_hypotheses(ZetaPoly.make(2, [1, 0, 1]))
        assert rep.integer_coefficients
        assert rep.positive_leading
        assert rep.satisfied

    def test_negative_leading_fails(self):
        rep = hilbert_hypotheses(ZetaPoly.make(2, [0, -1]))
        assert rep.integer_coefficients
        assert not rep.positive_leading
        assert not rep.satisfied

    def test_gaussian_coefficient_fails(self):
        rep = hilbert_hypotheses(ZetaPoly.make(2, [qi(0, 1), 0, 1]))
        assert not rep.integer_coefficients
