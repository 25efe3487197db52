import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polyx_values, qi_values, rand_polyx
from zetapoly.errors import InputError
from zetapoly.exactnum import ONE, PowerSeries, ZERO, linear_power, qi
from zetapoly.polyspace import PolyX
from zetapoly.rv import ZetaPoly, binomial_in_s, rv_forward, rv_inverse, series_coeffs

R_DELTA_MINUS = PolyX.make(10, [0, 4, 0, 25, 0, 42, 0, 25, 0, 4, 0])

# the ten nonzero coefficients of the zeta-polynomial of the odd period part
Z_DELTA_MINUS_COEFFS = [
    Fraction(0),
    Fraction(-727, 1260),
    Fraction(403, 360),
    Fraction(-13193, 11340),
    Fraction(70841, 90720),
    Fraction(-2137, 8640),
    Fraction(833, 8640),
    Fraction(-367, 30240),
    Fraction(7, 2160),
    Fraction(-5, 36288),
    Fraction(1, 36288),
]


class TestBinomialInS:
    def test_w2_j0(self):
        b = binomial_in_s(2, 0)
        assert [c.re for c in b.coeffs] == [1, Fraction(-3, 2), Fraction(1, 2)]
        assert b.at_int(0) == ONE

    def test_w10_j1_at_minus_one(self):
        assert binomial_in_s(10, 1).at_int(-1) == ONE  # C(10, 10)

    def test_leading_coefficient_is_inverse_factorial(self):
        for w in (2, 4, 10):
            for j in range(w + 1):
                assert binomial_in_s(w, j).coeffs[w] == qi(Fraction(1, math.factorial(w)))

    def test_range_validation(self):
        with pytest.raises(InputError):
            binomial_in_s(10, 11)
        with pytest.raises(InputError):
            binomial_in_s(10, -1)
        with pytest.raises(InputError):
            binomial_in_s(3, 0)

    @given(st.sampled_from([2, 4, 6, 8]), st.integers(0, 8), st.integers(0, 10))
    def test_matches_integer_binomials_at_nonpositive_arguments(self, w, j, n):
        if j > w:
            j = w
        assert binomial_in_s(w, j).at_int(-n) == qi(math.comb(w + n - j, w))


class TestForward:
    def test_delta_minus_golden(self):
        Z = rv_forward(R_DELTA_MINUS)
        assert [c.re for c in Z.coeffs] == Z_DELTA_MINUS_COEFFS
        assert all(c.im == 0 for c in Z.coeffs)
        assert Z.at_int(0).is_zero()

    def test_constant_gives_binomial_series(self):
        Z = rv_forward(PolyX.make(2, [1]))
        assert [v.re for v in series_coeffs(Z, 4)] == [1, 3, 6, 10]

    def test_top_monomial(self):
        # R = X^2 at w = 2: the series X^2/(1-X)^3 = X^2 + 3X^3 + ... gives
        # Z(s) = C(-s, 2) with Z(0) = Z(-1) = 0 and Z(-2) = 1
        Z = rv_forward(PolyX.make(2, [0, 0, 1]))
        assert Z.at_int(0).is_zero()
        assert Z.at_int(-1).is_zero()
        assert Z.at_int(-2) == ONE
        assert Z.at_int(-3) == qi(3)

    @given(polyx_values)
    @settings(max_examples=40)
    def test_leading_coefficient_is_coefficient_sum_over_factorial(self, R):
        Z = rv_forward(R)
        total = ZERO
        for a in R.coeffs:
            total = total + a
        assert Z.coeffs[R.w] == total * qi(Fraction(1, math.factorial(R.w)))

    @given(polyx_values, polyx_values, qi_values)
    @settings(max_examples=30)
    def test_linearity(self, R1, R2, alpha):
        if R1.w != R2.w:
            R2 = PolyX.make(R1.w, list(R2.coeffs)[: R1.w + 1])
        lhs = rv_forward(R1.scale(alpha) + R2)
        rhs = ZetaPoly(
            R1.w,
            tuple(
                alpha * a + b
                for a, b in zip(rv_forward(R1).coeffs, rv_forward(R2).coeffs)
            ),
        )
        assert lhs == rhs

    def test_generating_series_two_routes(self):
        # series route from the binomial expansion of (1-X)^-(w+1)
        rng = random.Random(41)
        for w in (2, 4, 6):
            R = rand_polyx(rng, w)
            Z = rv_forward(R)
            count = 3 * w + 1
            denom = PowerSeries.from_polynomial(linear_power(qi(-1), ONE, w + 1))
            series = PowerSeries.from_polynomial(R.coeffs).mul(
                denom.inverse(count), order=count
            )
            values = series_coeffs(Z, count)
            assert all(series.coeff(n) == values[n] for n in range(count))


class TestInverse:
    def test_delta_roundtrip(self):
        assert rv_inverse(rv_forward(R_DELTA_MINUS)) == R_DELTA_MINUS

    def test_constant_z(self):
        Z = ZetaPoly.make(2, [1])
        R = rv_inverse(Z)
        assert rv_forward(R) == Z

    def test_binomial_z_recovers_constant(self):
        Z = binomial_in_s(2, 0)  # C(2-s, 2)
        assert rv_inverse(Z) == PolyX.make(2, [1])

    @given(polyx_values)
    @settings(max_examples=60)
    def test_roundtrip_forward_first(self, R):
        assert rv_inverse(rv_forward(R)) == R

    @given(polyx_values)
    @settings(max_examples=40)
    def test_roundtrip_inverse_first(self, R):
        Z = rv_forward(R)  # any ZetaPoly arises this way
        assert rv_forward(rv_inverse(Z)) == Z

    def test_zero(self):
        assert rv_inverse(ZetaPoly.make(4, [])).is_zero()


class TestSeriesCoeffs:
    def test_count_validated(self):
        with pytest.raises(InputError):
            series_coeffs(ZetaPoly.make(2, [1]), 0)

    def test_convolution_reproduces_coefficients(self):
        # convolving the series with (1-X)^(w+1) gives R then zeros
        rng = random.Random(43)
        R = rand_polyx(rng, 4)
        Z = rv_forward(R)
        w = 4
        vals = series_coeffs(Z, 2 * w + 3)
        signed = [(-1) ** j * math.comb(w + 1, j) for j in range(w + 2)]
        for m in range(2 * w + 3):
            acc = ZERO
            for j in range(min(m, w + 1) + 1):
                acc = acc + vals[m - j] * signed[j]
            if m <= w:
                assert acc == R.coeffs[m]
            else:
                assert acc.is_zero()


class TestZetaPolySerialization:
    def test_dict_roundtrip(self):
        Z = rv_forward(R_DELTA_MINUS)
        d = Z.to_dict()
        assert d["variable"] == "s"
        assert ZetaPoly.from_dict(d) == Z

    def test_variable_mismatch(self):
        d = rv_forward(R_DELTA_MINUS).to_dict()
        d["variable"] = "X"
        with pytest.raises(InputError):
            ZetaPoly.from_dict(d)

    def test_compose_one_minus_s(self):
        Z = ZetaPoly.make(2, [0, 1])  # Z(s) = s
        assert Z.compose_one_minus_s() == ZetaPoly.make(2, [1, -1])
        Z2 = ZetaPoly.make(2, [qi(0, 1), qi(2), qi(Fraction(1, 2))])
        W = Z2.compose_one_minus_s()
        for s0 in (-3, -1, 0, 2, 5):
            assert W.at_int(s0) == Z2.at_int(1 - s0)
