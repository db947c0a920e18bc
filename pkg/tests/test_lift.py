"""Lifted post-Lie product and the star Hopf algebra."""

from itertools import product

from hypothesis import given, strategies as st

from postlie.algebra import affine_vector_fields, zero_product, sl
from postlie.identities import lift_suite, star_word_suite, symmetric_star_suite
from postlie.lift import PostLieUEA
from postlie.partitions import phi

from conftest import elements, vectors


def test_unit_and_letter_cases(sl2):
    L, R, P, V = sl2
    for i in range(3):
        x = V.letter(i)
        assert V.triangle(V.one(), x) == x
        assert V.triangle(x, V.one()) == V.zero()  # x |> 1 = 0
        for j in range(3):
            assert V.triangle(x, V.letter(j)) == V.vector(P(L.basis(i), L.basis(j)))


def test_derivation_on_two_letters(gl2):
    # [PAPER] d(x)(yz) = (x|>y) z + y (x|>z)
    L, R, P, V = gl2
    for i, j, k in product(range(4), repeat=3):
        x, y, z = L.basis(i), L.basis(j), L.basis(k)
        lhs = V.derivation(x, V.mul(V.vector(y), V.vector(z)))
        rhs = V.mul(V.vector(P(x, y)), V.vector(z)) + V.mul(V.vector(y), V.vector(P(x, z)))
        assert lhs == rhs
        assert lhs == V.triangle(V.vector(x), V.mul(V.vector(y), V.vector(z)))


@given(vectors(4), vectors(4))
def test_two_letter_star(x, y):
    # [PAPER] x * y = x y + x |> y
    from conftest import make
    from postlie.algebra import gl

    _, _, P, V = make(gl(2), 4)
    lhs = V.star(V.vector(x), V.vector(y))
    assert lhs == V.mul(V.vector(x), V.vector(y)) + V.vector(P(x, y))


def test_three_letter_star_five_terms(gl2):
    # [PAPER] x1*x2*x3 = x1x2x3 + x1(x2|>x3) + x2(x1|>x3) + (x1|>x2)x3 + x1|>(x2|>x3)
    L, R, P, V = gl2
    v = V.vector
    for i, j, k in product(range(4), repeat=3):
        a, b, c = L.basis(i), L.basis(j), L.basis(k)
        rhs = (
            V.product([v(a), v(b), v(c)])
            + V.mul(v(a), v(P(b, c)))
            + V.mul(v(b), v(P(a, c)))
            + V.mul(v(P(a, b)), v(c))
            + v(P(a, P(b, c)))
        )
        assert V.star_letters([a, b, c]) == rhs


def test_star_fold_matches_partition_sum(sl2):
    # [DERIVED] the partition sum uses only the Lie-level product
    L, R, P, V = sl2
    for n in range(1, 5):
        for w in product(range(3), repeat=n):
            letters = [L.basis(i) for i in w]
            assert V.star_letters(letters) == phi(V, letters)


@given(st.data())
def test_star_associative_and_unital(data):
    from conftest import make

    _, _, _, V = make(sl(2), 5)
    A, B, C = (data.draw(elements(V, 2, 2)) for _ in range(3))
    assert V.star(V.star(A, B), C) == V.star(A, V.star(B, C))
    assert V.star(V.one(), A) == A == V.star(A, V.one())


@given(st.data())
def test_triangle_composes_through_star(data):
    from conftest import make

    _, _, _, V = make(sl(2), 5)
    A, B, C = (data.draw(elements(V, 2, 2)) for _ in range(3))
    assert V.triangle(A, V.triangle(B, C)) == V.triangle(V.star(A, B), C)


def test_star_antipode_on_two_letters(sl2):
    # [DERIVED] S*(x*y) by the recursion equals y*x
    L, R, P, V = sl2
    for i, j in product(range(3), repeat=2):
        xy = V.star(V.letter(i), V.letter(j))
        assert V.star_antipode(xy) == V.star(V.letter(j), V.letter(i))
        assert V.star_antipode(V.letter(i)) == -V.letter(i)


def test_zero_product_gives_plain_algebra():
    L = sl(2)
    V = PostLieUEA(zero_product(L), 4)
    A, B = V.parse("e*f"), V.parse("h*e")
    assert V.star(A, B) == V.mul(A, B)
    assert V.triangle(A, B) == V.zero()


def test_lift_suite_small(sl2):
    _, _, _, V = sl2
    reps = lift_suite(V, 3) + star_word_suite(V, 3)
    assert all(r.ok for r in reps), [str(r) for r in reps if not r.ok]


def test_symmetric_words_in_pre_lie_case():
    L, P = affine_vector_fields(1)
    V = PostLieUEA(P, 4)
    rep = symmetric_star_suite(V, 3)
    assert rep.ok and rep.checked > 0
