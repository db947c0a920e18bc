"""Set partitions and the isomorphism phi."""

from itertools import product

import pytest
from hypothesis import given, strategies as st
from sympy.utilities.iterables import multiset_partitions

from postlie.partitions import (
    BarElement,
    SetPartition,
    bell,
    enumerate_partitions,
    nc_bell,
    nc_bell_chains,
    partition_table,
    phi,
    phi_bar,
    phi_inverse,
    phi_recursive,
    x_pi,
)


def test_bell_numbers():
    # [PAPER] 1, 2, 5, 15, 52, 203
    assert [len(enumerate_partitions(n)) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]
    assert [bell(n) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n", range(1, 8))
def test_partitions_match_sympy(n):
    # [DERIVED] same set of partitions as an independent enumerator
    ours = {frozenset(frozenset(b) for b in p) for p in enumerate_partitions(n)}
    theirs = {frozenset(frozenset(b) for b in p) for p in multiset_partitions(list(range(1, n + 1)))}
    assert ours == theirs


def test_p3_order():
    # [PAPER] the five diagrams of P_3, including {{1},{2,3}} and {{2},{1,3}}
    got = [repr(p) for p in enumerate_partitions(3)]
    assert got == ["{{1}, {2}, {3}}", "{{1}, {2,3}}", "{{1,2}, {3}}", "{{1,2,3}}", "{{2}, {1,3}}"]


@given(st.integers(1, 7).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_canonical_block_order(p):
    maxima = [b[-1] for b in p]
    assert maxima == sorted(maxima)
    assert all(list(b) == sorted(b) for b in p)
    assert SetPartition(reversed(p)) == p


def test_partition_guard():
    with pytest.raises(ValueError):
        enumerate_partitions(13)
    with pytest.raises(ValueError):
        SetPartition([[1], [3]])


def test_x_pi_examples(gl2):
    # [PAPER] X for 0-hat, {{1},{2,3}} and 1-hat
    L, R, P, V = gl2
    x1, x2, x3 = L.basis(1), L.basis(2), L.basis(3)
    v = V.vector
    assert x_pi(V, SetPartition([[1], [2], [3]]), [x1, x2, x3]) == V.product([v(x1), v(x2), v(x3)])
    assert x_pi(V, SetPartition([[1], [2, 3]]), [x1, x2, x3]) == V.mul(v(x1), v(P(x2, x3)))
    assert x_pi(V, SetPartition([[1, 2, 3]]), [x1, x2, x3]) == v(P(x1, P(x2, x3)))


def test_phi_small_cases(gl2):
    L, R, P, V = gl2
    assert phi(V, []) == V.one()
    a, b = L.basis(2), L.basis(1)
    assert phi(V, [a, b]) == V.mul(V.vector(a), V.vector(b)) + V.vector(P(a, b))
    assert phi_inverse(V, V.vector(a)) == BarElement.from_letters([a])


def test_phi_inverse_two_letters(gl2):
    # [PAPER] phi^-1(x1 x2) = x1.x2 - x1|>x2
    L, R, P, V = gl2
    for i, j in product(range(4), repeat=2):
        x1, x2 = L.basis(i), L.basis(j)
        got = phi_inverse(V, V.mul(V.vector(x1), V.vector(x2)))
        want = BarElement.from_letters([x1, x2]) - BarElement.from_letters([P(x1, x2)])
        assert phi_bar(V, got) == phi_bar(V, want)


def test_phi_routes_and_roundtrip(sl2):
    L, R, P, V = sl2
    for n in range(1, 5):
        for w in product(range(3), repeat=n):
            letters = [L.basis(i) for i in w]
            assert phi(V, letters) == phi_recursive(V, letters)
    for m in V.monomials(3):
        A = V.monomial(m)
        assert phi_bar(V, phi_inverse(V, A)) == A


def test_nc_bell(gl2):
    L, R, P, V = gl2
    x = tuple(L.basis(1)[k] + L.basis(2)[k] for k in range(4))
    assert nc_bell(V, x, 1) == V.vector(x)
    assert nc_bell(V, x, 2) == V.power(V.vector(x), 2) + V.vector(P(x, x))
    for i in range(1, 5):
        assert nc_bell(V, x, i) == V.star_fold([V.vector(x)] * i)
    assert nc_bell_chains(V, x, 3)[2] == P(x, P(x, x))


def test_partition_table_text():
    rows = partition_table(None, 3)
    assert rows[1][1] == "x1 (x2|>x3)" and rows[3][1] == "x1|>(x2|>x3)"
