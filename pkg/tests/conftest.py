from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from postlie.algebra import gl, post_lie_from_r, sl, triangular_r
from postlie.lift import PostLieUEA

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def make(L, trunc=6):
    R = triangular_r(L)
    P = post_lie_from_r(L, R)
    return L, R, P, PostLieUEA(P, trunc)


@pytest.fixture(scope="session")
def gl2():
    return make(gl(2))


@pytest.fixture(scope="session")
def gl3():
    return make(gl(3), trunc=4)


@pytest.fixture(scope="session")
def sl2():
    return make(sl(2))


small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def vectors(d):
    return st.tuples(*[small_rationals] * d)


def elements(V, max_deg=2, max_terms=3):
    """Random elements of U(g) of bounded degree."""
    mons = [m for k in range(max_deg + 1) for m in V.monomials(k)]
    return st.lists(
        st.tuples(st.sampled_from(mons), st.integers(-3, 3).filter(bool)), min_size=0, max_size=max_terms
    ).map(lambda pairs: V.element({m: Fraction(c) for m, c in pairs}) if pairs else V.zero())
