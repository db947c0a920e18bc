from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from postlie.scalars import Poly, format_scalar, parse_scalar, symbols


def test_parse_and_format_roundtrip():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar(-4) == -4
    assert format_scalar(Fraction(-2, 4)) == "-1/2"
    assert format_scalar(Fraction(5)) == "5"


@pytest.mark.parametrize("bad", [0.5, True, "x/2", "1/0", None])
def test_parse_refuses_inexact_or_garbage(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


@given(st.fractions(max_denominator=50))
def test_format_parse_inverse(q):
    assert parse_scalar(format_scalar(q)) == q


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3)
polys = st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), coeffs), max_size=4).map(
    lambda ts: sum((Poly(2, {e: c}) for e, c in ts), Poly(2))
)


@given(polys, polys, polys)
def test_poly_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p) == Poly(2) and not (p - p)


def test_poly_evaluation_consistency():
    a, b = symbols(2)
    p = (a + b) * (a - b)
    assert p == a * a - b * b
    assert repr(a * a * 3 - b) == "3*a0^2 - a1"
    assert (p * Fraction(1, 2)).degree() == 2
