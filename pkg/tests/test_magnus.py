"""The post-Lie Magnus expansion."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from postlie.algebra import affine_vector_fields, gl, sl, zero_product
from postlie.lift import PostLieUEA
from postlie.magnus import (
    ChiConsistencyError,
    bch_bar,
    bch_recursion,
    bch_recursion_check,
    bernoulli,
    chi2_closed,
    chi2_r,
    chi3_closed,
    chi3_r,
    chi_series,
    chi_via_partitions,
    dexp_star,
    dexpinv_star,
    exp_identity,
    ode_residual,
    pre_lie_magnus,
)
from postlie.scalars import symbols
from postlie.uea import Series

from conftest import make, vectors


def test_bernoulli_against_sympy():
    # [DERIVED] sympy's table, with the b_1 = -1/2 convention pinned here
    b = bernoulli(10)
    for n in range(11):
        ref = Fraction(str(sympy.bernoulli(n)))
        if n == 1:
            ref = Fraction(-1, 2)
        assert b[n] == ref


def test_closed_forms_generic_x(gl2):
    # [PAPER] chi_2 = -1/2 x|>x and the chi_3 formula, with symbolic coordinates
    L, R, P, _ = gl2
    V = PostLieUEA(P, 3)
    x = tuple(symbols(4))
    chi = chi_series(V, x, 3)
    assert chi[1] == x
    assert chi[2] == chi2_closed(P, x)
    assert chi[3] == chi3_closed(P, x)
    assert chi[2] == chi2_r(L, R, x) and chi[3] == chi3_r(L, R, x)


@settings(max_examples=10)
@given(vectors(4))
def test_exp_identity_and_primitivity(x):
    _, _, _, V = make(gl(2), 5)
    chi = chi_series(V, x, 5)  # raises if a term leaves the Lie algebra
    lhs, rhs = exp_identity(V, x, 5, chi)
    assert lhs == rhs


@settings(max_examples=10)
@given(vectors(3))
def test_partition_route_and_ode(x):
    _, _, _, V = make(sl(2), 5)
    chi = chi_series(V, x, 5)
    assert chi_via_partitions(V, x, 5) == chi
    assert not any(ode_residual(V, x, 5, chi).coeffs)


def test_zero_product_gives_trivial_chi():
    L = sl(2)
    V = PostLieUEA(zero_product(L), 5)
    x = (Fraction(1), Fraction(2), Fraction(-1))
    chi = chi_series(V, x, 5)
    assert all(not any(chi[n]) for n in range(2, 6))
    assert chi_via_partitions(V, x, 4) == chi_series(V, x, 4)


def test_ode_order_zero_is_x(gl2):
    L, R, P, V = gl2
    x = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3))
    chi = chi_series(V, x, 3)
    assert chi.series(V).derivative()[0] == V.vector(x)


@settings(max_examples=10)
@given(vectors(3))
def test_dexp_roundtrip(y):
    _, _, _, V = make(sl(2), 5)
    x = (Fraction(1), Fraction(-1), Fraction(2))
    beta = chi_series(V, x, 5).series(V)
    ys = Series.monomial(V, V.vector(y), 0, 5)
    assert dexpinv_star(V, beta, dexp_star(V, beta, ys, 5), 5) == ys
    assert dexp_star(V, Series.zero(V, 5), ys, 5) == ys


def test_dexp_first_order(sl2):
    # [PAPER] order-1 part of dexp*_beta(y) is 1/2 [beta, y]_*
    L, R, P, V = sl2
    b, y = V.letter(1), V.letter(2)
    beta = Series.monomial(V, b, 1, 3)
    out = dexp_star(V, beta, (0, 0, 1), 3)
    assert out[1] == V.star_commutator(b, y).scale(Fraction(1, 2))


def test_bch_bar_basics(gl2):
    L = gl2[0]
    a = (Fraction(1), 0, 0, 0)
    assert all(not any(v) for v in bch_bar(L, a, (0, 0, 0, 0), 4))
    x, y = L.basis(1), L.basis(2)
    from postlie.algebra import bracket, vscale

    assert bch_bar(L, x, y, 2)[2] == vscale(Fraction(1, 2), bracket(L, x, y))


@pytest.mark.parametrize("x", [(1, 2, -1, 3), (0, 1, 1, 0), (2, -1, 1, 1)])
def test_bch_recursion_from_factorization(gl2, x):
    # [DERIVED] chi = x + BCHbar(x, R_- chi) is exp(x) exp(chi_-) = exp(chi_+)
    L, R, P, V = gl2
    x = tuple(Fraction(c) for c in x)
    assert bch_recursion_check(V, R, x, 4, "factorization").ok


def test_printed_bch_recursion_differs_at_order_three(gl2):
    # chi = x + BCHbar(-R_- chi, x) agrees to order 2 only; see notes
    L, R, P, V = gl2
    x = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3))
    chi = chi_series(V, x, 4)
    fixed = bch_recursion(L, R, x, 4, "literal")
    assert fixed[1] == chi[1] and fixed[2] == chi[2]
    assert fixed[3] != chi[3]


@pytest.mark.parametrize("n", [1, 2])
def test_pre_lie_reduction(n):
    # abelian bracket: chi agrees with the pre-Lie Magnus recursion
    L, P = affine_vector_fields(n)
    V = PostLieUEA(P, 4)
    x = tuple(Fraction((i % 3) - 1, 1 + i % 2) for i in range(L.dim))
    chi = chi_series(V, x, 4)
    om = pre_lie_magnus(P, x, 4)
    assert all(chi[k] == om[k] for k in range(1, 5))


def test_order_guard(sl2):
    V = sl2[3]
    with pytest.raises(ValueError):
        chi_series(V, (1, 0, 0), V.trunc + 1)
    with pytest.raises(ValueError):
        bch_bar(sl2[0], (1, 0, 0), (0, 1, 0), 5)
    assert issubclass(ChiConsistencyError, RuntimeError)
