"""The map F, star products through F and the factorization theorems."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from postlie.algebra import LinearEndo, bracket, gl, post_lie_from_r, r_plus_minus, sl
from postlie.factor import (
    FMap,
    NotInvolutiveError,
    exp_factorize,
    expm,
    grouplike_factorize_star,
    matrix_factor_check,
    matrix_to_vector,
    vector_to_matrix,
)
from postlie.identities import f_map_suite
from postlie.lift import PostLieUEA
from postlie.partitions import phi_word

from conftest import elements, make


def test_f_on_letters_and_pairs(gl2):
    # [PAPER] F(x) = x and F(x1.x2) = x1 x2 + [R_- x1, x2]
    L, R, P, V = gl2
    Fm = FMap(V, R)
    _, Rm = r_plus_minus(R)
    for i in range(4):
        assert Fm.word((i,)) == V.letter(i)
        for j in range(4):
            x1, x2 = L.basis(i), L.basis(j)
            want = V.mul(V.vector(x1), V.vector(x2)) + V.vector(bracket(L, Rm(x1), x2))
            assert Fm.word((i, j)) == want


def test_f_equals_phi(gl2):
    L, R, P, V = gl2
    Fm = FMap(V, R)
    for n in range(5):
        for w in product(range(4), repeat=n):
            assert Fm.word(w) == phi_word(V, w)


def test_f_suite_sl2(sl2):
    L, R, P, V = sl2
    reps = f_map_suite(V, R, 3)
    assert all(r.ok for r in reps), [str(r) for r in reps if not r.ok]


def test_decompose_examples(gl2):
    L, R, P, V = gl2
    Fm = FMap(V, R)
    Rp, Rm = r_plus_minus(R)
    x = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3))
    T = Fm.decompose(V.vector(x))
    assert Fm.reconstruct(T) == V.vector(x)
    # primitive: R_+(x) (x) 1 + 1 (x) (-R_-(x))
    from postlie.uea import Tensor

    want = Tensor.from_pair(V.vector(Rp(x)), V.one()) + Tensor.from_pair(V.one(), -V.vector(Rm(x)))
    assert T == want
    assert Fm.reconstruct(Fm.decompose(V.one())) == V.one()
    A = V.parse("E12*E21")
    assert Fm.reconstruct(Fm.decompose(A)) == A


@settings(max_examples=20)
@given(st.data())
def test_star_routes_agree(data):
    _, R, _, V = make(sl(2), 4)
    Fm = FMap(V, R)
    A, B = data.draw(elements(V, 2, 2)), data.draw(elements(V, 2, 2))
    s = V.star(A, B)
    assert Fm.star_push(A, B) == s
    assert Fm.star_sandwich(A, B) == s
    assert Fm(Fm.inverse(A)) == A


def test_two_letter_sandwich(gl2):
    # [PAPER] x*y via the sandwich formula is xy + [R_- x, y]
    L, R, P, V = gl2
    Fm = FMap(V, R)
    _, Rm = r_plus_minus(R)
    for i, j in product(range(4), repeat=2):
        x, y = V.letter(i), V.letter(j)
        want = V.mul(x, y) + V.vector(bracket(L, Rm(L.basis(i)), L.basis(j)))
        assert Fm.star_sandwich(x, y) == want


@pytest.mark.parametrize("x", [(0, 1, 1, 0), (1, 2, -1, 3)])
def test_factorizations(gl2, x):
    L, R, P, V = gl2
    x = tuple(Fraction(c) for c in x)
    f = grouplike_factorize_star(V, R, x, 6)
    assert f.lhs == f.rhs and f.unique
    g = exp_factorize(V, R, x, 6)
    assert g.lhs == g.rhs and g.unique
    # chi_+ - chi_- = chi
    from postlie.magnus import chi_series

    chi = chi_series(V, x, 6)
    for n in range(1, 7):
        assert tuple(a - b for a, b in zip(g.plus[n], g.minus[n])) == chi[n]


def test_identity_r_matrix_is_trivial():
    L = gl(2)
    R = LinearEndo.identity(4)
    V = PostLieUEA(post_lie_from_r(L, R), 4)
    x = (Fraction(1), Fraction(1), Fraction(2), Fraction(0))
    f = grouplike_factorize_star(V, R, x, 4)
    assert f.ok and f.rhs == V.exp_trunc(V.vector(x), 4)
    g = exp_factorize(V, R, x, 4)
    assert g.ok and g.plus[1] == x and not any(g.minus[2])


def test_kernel_of_r_minus(gl2):
    L, R, P, V = gl2
    x = (Fraction(2), Fraction(1), Fraction(0), Fraction(-1))  # upper triangular
    f = grouplike_factorize_star(V, R, x, 5)
    assert f.ok and f.lhs == V.exp_trunc(V.vector(x), 5)


def test_non_involutive_rejected():
    L = sl(2)
    R = LinearEndo.diagonal([1, 1, 0])
    V = PostLieUEA(post_lie_from_r(L, R), 3)
    with pytest.raises(NotInvolutiveError):
        grouplike_factorize_star(V, R, (1, 0, 0), 3)


@settings(max_examples=25)
@given(arrays(np.float64, (4, 4), elements=st.floats(-3, 3)))
def test_expm_against_scipy(M):
    # [DERIVED] scipy's Pade-based expm as the oracle
    ref = scipy.linalg.expm(M)
    assert np.allclose(expm(M), ref, rtol=1e-11, atol=1e-11)


def test_expm_edge_cases():
    assert np.array_equal(expm(np.zeros((3, 3))), np.eye(3))
    with pytest.raises(FloatingPointError):
        expm(np.array([[np.inf]]))


def test_matrix_roundtrip_and_zero_t(gl3):
    L, R, P, V = gl3
    X = np.arange(9, dtype=float).reshape(3, 3) / 8
    x = matrix_to_vector(L, X)
    assert np.allclose(vector_to_matrix(L, x), X)
    rows = matrix_factor_check(V, R, x, [0.0], 4)
    assert rows[0].error == 0.0 and rows[0].ratio is None


def test_strictly_upper_is_exact(gl3):
    L, R, P, V = gl3
    X = np.triu(np.random.default_rng(4).uniform(-1, 1, (3, 3)), 1)
    rows = matrix_factor_check(V, R, matrix_to_vector(L, X), [0.25, 0.125], 4)
    assert all(r.error <= 1e-12 for r in rows)
