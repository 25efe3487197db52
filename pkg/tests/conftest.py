import os
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from zetapoly.exactnum import GaussianRational, I
from zetapoly.lvalues import CACHE_ENV_VAR
from zetapoly.polyspace import PolyX


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    os.environ[CACHE_ENV_VAR] = str(tmp_path_factory.mktemp("zetapoly-cache"))
    yield


# -- seeded-random helpers (bulk tests) --------------------------------

def rand_qi(rng: random.Random, span: int = 9, max_den: int = 4) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-span, span), rng.randint(1, max_den)),
        Fraction(rng.randint(-span, span), rng.randint(1, max_den)),
    )


def rand_polyx(rng: random.Random, w: int) -> PolyX:
    return PolyX(w, tuple(rand_qi(rng) for _ in range(w + 1)))


def symmetric_polyx(rng: random.Random, w: int, eps: int) -> PolyX:
    """Random R with a_j + eps i^w a_{w-j} = 0 for all j."""
    phase = GaussianRational(-eps) * I ** (-w)
    coeffs = [None] * (w + 1)
    for j in range(w // 2):
        a = rand_qi(rng)
        coeffs[j] = a
        coeffs[w - j] = phase * a
    mid = w // 2
    if (GaussianRational(1) + GaussianRational(eps) * I**w).is_zero():
        coeffs[mid] = rand_qi(rng)
    else:
        coeffs[mid] = GaussianRational(0)
    return PolyX(w, tuple(coeffs))


def violating_polyx(rng: random.Random, w: int, eps: int) -> PolyX:
    """Random R breaking the symmetry in at least one coefficient pair.

    Only indices j < w/2 are bumped: the middle coefficient never
    constrains the relation (its pair condition is a_mid (1 + eps i^w) = 0,
    which is automatic whenever a_mid is allowed to be nonzero).
    """
    R = symmetric_polyx(rng, w, eps)
    j = rng.randrange(w // 2)
    bump = GaussianRational(rng.randint(1, 5))
    coeffs = list(R.coeffs)
    coeffs[j] = coeffs[j] + bump
    return PolyX(w, tuple(coeffs))


# -- hypothesis strategies ---------------------------------------------

small_fractions = st.fractions(min_value=-8, max_value=8, max_denominator=6)
qi_values = st.builds(GaussianRational, small_fractions, small_fractions)
even_w = st.sampled_from([2, 4, 6, 8, 10])


def polyx_of(w: int):
    return st.builds(
        lambda cs: PolyX(w, tuple(cs)),
        st.lists(qi_values, min_size=w + 1, max_size=w + 1),
    )


polyx_values = even_w.flatmap(polyx_of)
