"""Exhaustive invariant checks, grouped by layer.

Every check returns a :class:`~postlie.algebra.Report`.  Degree limits come
from :class:`Limits`; the defaults are the desk-scale sizes used by the
acceptance suite.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from fractions import Fraction
from itertools import combinations, product

from postlie.algebra import (
    LieAlgebra,
    LinearEndo,
    PostLieProduct,
    Report,
    bracket,
    check_mcybe,
    double_bracket,
    post_lie_from_r,
    r_bracket_algebra,
    r_plus_minus,
    validate_post_lie,
    vadd,
)
from postlie.factor import FMap, exp_factorize, grouplike_factorize_star
from postlie.lift import PostLieUEA
from postlie.magnus import (
    bch_recursion_check,
    chi_series,
    chi_via_partitions,
    dexp_star,
    dexpinv_star,
    exp_identity,
    ode_residual,
)
from postlie.partitions import BarElement, bell, enumerate_partitions, phi, phi_bar, phi_inverse, phi_recursive
from postlie.uea import UEA, Series, Tensor, series_coproduct, series_tensor_square


@dataclass(frozen=True)
class Limits:
    hopf_degree: int = 4
    lift_degree: int = 5
    star_word: int = 4
    phi_word: int = 5
    phi_inverse_degree: int = 4
    magnus_order: int = 6
    bch_order: int = 4
    f_word: int = 4
    factor_order: int = 6


@dataclass
class Fixture:
    """A Lie algebra with a post-Lie product and (optionally) its r-matrix."""

    name: str
    algebra: LieAlgebra
    product: PostLieProduct
    r_matrix: LinearEndo | None = None
    trunc: int = 6

    @classmethod
    def from_r(cls, name, L, R, trunc=6):
        return cls(name, L, post_lie_from_r(L, R), R, trunc)

    def uea(self) -> PostLieUEA:
        if not hasattr(self, "_V"):
            self._V = PostLieUEA(self.product, self.trunc)
        return self._V


def _basis_words(d, n):
    return list(product(range(d), repeat=n))


def _monomials(V, max_deg):
    return [m for k in range(max_deg + 1) for m in V.monomials(k)]


# ---------------------------------------------------------------------------
# Lie level


def lie_axioms(L: LieAlgebra) -> Report:
    rep = Report(f"Lie axioms of {len(L.labels)}-dim algebra")
    anti, jac = L.check()
    d = L.dim
    rep.checked = d * d + d**3
    for w in anti:
        rep.fail("antisymmetry", w)
    for w in jac:
        rep.fail("Jacobi", w)
    return rep


def r_matrix_suite(L: LieAlgebra, R: LinearEndo) -> list[Report]:
    reps = [check_mcybe(L, R), validate_post_lie(L, post_lie_from_r(L, R))]
    P = post_lie_from_r(L, R)
    Rp, _ = r_plus_minus(R)
    rep = Report("double bracket = post-Lie bracket, right product")
    for i in range(L.dim):
        for j in range(L.dim):
            x, y = L.basis(i), L.basis(j)
            rep.checked += 2
            if P.bar_bracket(x, y) != double_bracket(L, R, x, y):
                rep.fail("[[x,y]] = [x,y]_R", (i, j))
            if bracket(L, Rp(x), y) != vadd(P(x, y), bracket(L, x, y)):
                rep.fail("x <| y = x |> y + [x,y]", (i, j))
    reps.append(rep)
    jr = lie_axioms(r_bracket_algebra(L, R))
    jr.name = "Jacobi of [.,.]_R"
    reps.append(jr)
    return reps


# ---------------------------------------------------------------------------
# U(g) Hopf structure


def hopf_suite(V, max_deg=4) -> list[Report]:
    mons = _monomials(V, max_deg)
    co = Report("coassociativity")
    cc = Report("cocommutativity")
    ap = Report("antipode axioms")
    fl = Report("filtration and normal form")
    for m in mons:
        A = V.monomial(m)
        D = V.coproduct(A)
        co.checked += 1
        if V.coproduct_left(D) != V.coproduct_right(D):
            co.fail("(D x id) D = (id x D) D", m)
        cc.checked += 1
        if D.flip() != D:
            cc.fail("tau D = D", m)
        unit = V.scalar(V.counit(A))
        ap.checked += 2
        if V.antipode_left(D).multiply() != unit:
            ap.fail("m (S x id) D = eps", m)
        if V.antipode_right(D).multiply() != unit:
            ap.fail("m (id x S) D = eps", m)
        fl.checked += 1
        if any(len(a) + len(b) != len(m) for a, b in D.terms):
            fl.fail("coproduct degrees", m)
    for a in mons:
        for b in mons:
            if len(a) + len(b) > max_deg:
                continue
            fl.checked += 2
            prod = V.mul(V.monomial(a), V.monomial(b))
            if prod != V.normalize(a + b) or prod.degree() > len(a) + len(b):
                fl.fail("mul = normalize(concatenation)", (a, b))
            if any(V.normalize(m) != V.monomial(m) for m in prod.terms):
                fl.fail("normalize idempotent", (a, b))
    return [co, cc, ap, fl]


# ---------------------------------------------------------------------------
# lifted product and star Hopf algebra


def _tensor_triangle(V, S: Tensor, T: Tensor) -> Tensor:
    out = Tensor(V)
    for (a1, a2), c in S.terms.items():
        for (b1, b2), v in T.terms.items():
            out = out + Tensor.from_pair(
                V.triangle(V.monomial(a1), V.monomial(b1)),
                V.triangle(V.monomial(a2), V.monomial(b2)),
            ).scale(c * v)
    return out


def lift_suite(V: PostLieUEA, max_deg=5) -> list[Report]:
    """The lifting identities, Eq. ``A|>(B|>C) = (A*B)|>C``, associativity
    of ``*`` and the coproduct morphism property."""
    d = V.algebra.dim
    mons = _monomials(V, max_deg)
    one = V.one()
    lift = Report("lifted product identities")
    for a in mons:
        A = V.monomial(a)
        lift.checked += 2
        if V.triangle(one, A) != A:
            lift.fail("1 |> A = A", a)
        if V.triangle(A, one) != V.scalar(V.counit(A)):
            lift.fail("A |> 1 = eps(A) 1", a)
    for a in mons:
        for b in mons:
            if len(a) + len(b) > max_deg:
                continue
            A, B = V.monomial(a), V.monomial(b)
            AB = V.triangle(A, B)
            lift.checked += 2
            if AB.counit() != A.counit() * B.counit():
                lift.fail("eps(A |> B) = eps(A) eps(B)", (a, b))
            if V.coproduct(AB) != _tensor_triangle(V, V.coproduct(A), V.coproduct(B)):
                lift.fail("D(A |> B) = (A1 |> B1) x (A2 |> B2)", (a, b))
            if len(a) + len(b) < max_deg:
                for i in range(d):
                    x = V.letter(i)
                    lift.checked += 1
                    lhs = V.triangle(V.mul(x, A), B)
                    rhs = V.triangle(x, V.triangle(A, B)) - V.triangle(V.triangle(x, A), B)
                    if lhs != rhs:
                        lift.fail("xA |> B = x |> (A |> B) - (x |> A) |> B", (i, a, b))
    last = Report("A |> (B |> C) = (A * B) |> C")
    assoc = Report("star associativity")
    leib = Report("A |> BC = (A1 |> B)(A2 |> C)")
    for a, b, c in product(mons, repeat=3):
        if len(a) + len(b) + len(c) > max_deg:
            continue
        A, B, C = V.monomial(a), V.monomial(b), V.monomial(c)
        last.checked += 1
        if V.triangle(A, V.triangle(B, C)) != V.triangle(V.star(A, B), C):
            last.fail("A |> (B |> C) = (A * B) |> C", (a, b, c))
        assoc.checked += 1
        if V.star(V.star(A, B), C) != V.star(A, V.star(B, C)):
            assoc.fail("(A * B) * C = A * (B * C)", (a, b, c))
        leib.checked += 1
        rhs = V.zero()
        for (a1, a2), k in V.coproduct_monomial(a).items():
            rhs = rhs + V.mul(V.triangle(V.monomial(a1), B), V.triangle(V.monomial(a2), C)).scale(k)
        if V.triangle(A, V.mul(B, C)) != rhs:
            leib.fail("A |> BC = (A1 |> B)(A2 |> C)", (a, b, c))
    morph = Report("coproduct is a star morphism")
    for a in mons:
        for b in mons:
            if len(a) + len(b) > max_deg:
                continue
            A, B = V.monomial(a), V.monomial(b)
            morph.checked += 1
            if V.coproduct(V.star(A, B)) != V.star_tensor(V.coproduct(A), V.coproduct(B)):
                morph.fail("D(A * B) = DA * DB", (a, b))
    return [lift, leib, last, assoc, morph]


def star_word_suite(V: PostLieUEA, max_len=4) -> list[Report]:
    """Coproduct shape of star words and the star antipode."""
    d = V.algebra.dim
    shape = Report("coproduct of star words")
    anti = Report("star antipode")
    for n in range(1, max_len + 1):
        for w in _basis_words(d, n):
            letters = [V.letter(i) for i in w]
            W = V.star_fold(letters)
            expect = Tensor(V)
            for k in range(n + 1):
                for left in combinations(range(n), k):
                    right = [i for i in range(n) if i not in left]
                    expect = expect + Tensor.from_pair(
                        V.star_fold([letters[i] for i in left]), V.star_fold([letters[i] for i in right])
                    )
            shape.checked += 1
            if V.coproduct(W) != expect:
                shape.fail("D(x1*..*xn) = unshuffles", w)
            anti.checked += 1
            rev = V.star_fold(reversed(letters))
            if V.star_antipode(W) != (-rev if n % 2 else rev):
                anti.fail("S*(x1*..*xn) = (-1)^n xn*..*x1", w)
    for m in _monomials(V, min(max_len, 3)):
        D = V.coproduct(V.monomial(m))
        unit = V.scalar(V.counit(V.monomial(m)))
        left = right = V.zero()
        for (a, b), c in D.terms.items():
            left = left + V.star(V.star_antipode_monomial(a), V.monomial(b)).scale(c)
            right = right + V.star(V.monomial(a), V.star_antipode_monomial(b)).scale(c)
        anti.checked += 2
        if left != unit:
            anti.fail("m* (S* x id) D = eps", m)
        if right != unit:
            anti.fail("m* (id x S*) D = eps", m)
    return [shape, anti]


def symmetric_star_suite(V: PostLieUEA, max_len=3) -> Report:
    """With an abelian bracket, star on symmetric words does not depend on
    the letter order (the symmetric-algebra setting)."""
    rep = Report("star on symmetric words")
    if not V.algebra.is_abelian():
        return rep
    d = V.algebra.dim
    for n in range(2, max_len + 1):
        for w in _basis_words(d, n):
            if list(w) != sorted(w):
                continue
            base = V.monomial(w)
            for a in range(d):
                rep.checked += 1
                lhs = V.star(V.letter(a), base)
                rhs = V.star(V.letter(a), V.product(V.letter(i) for i in reversed(w)))
                if lhs != rhs:
                    rep.fail("star well defined on symmetric words", (a, w))
    return rep


# ---------------------------------------------------------------------------
# partitions and phi


def partition_suite(V: PostLieUEA, max_word=5, max_inverse=4) -> list[Report]:
    d = V.algebra.dim
    L = V.algebra
    counts = Report("partition counts")
    for n in range(1, 9):
        counts.checked += 1
        if len(enumerate_partitions(n)) != bell(n):
            counts.fail("|P_n| = Bell(n)", n)
    routes = Report("phi = recursion = star fold")
    for n in range(1, max_word + 1):
        for w in _basis_words(d, n):
            letters = [L.basis(i) for i in w]
            p = phi(V, letters)
            routes.checked += 1
            if p != phi_recursive(V, letters) or p != V.star_letters(letters):
                routes.fail("phi routes agree", w)
            if p.counit():
                routes.fail("phi preserves the augmentation ideal", w)
    morph = Report("phi is an algebra morphism")
    for n in range(2, max_word + 1):
        for w in _basis_words(d, n):
            for k in range(1, n):
                u, v = BarElement.word(d, w[:k]), BarElement.word(d, w[k:])
                morph.checked += 1
                if phi_bar(V, u.concat(v)) != V.star(phi_bar(V, u), phi_bar(V, v)):
                    morph.fail("phi(u.v) = phi(u) * phi(v)", w)
    inv = Report("phi inverse")
    for m in _monomials(V, max_inverse):
        A = V.monomial(m)
        inv.checked += 1
        if phi_bar(V, phi_inverse(V, A)) != A:
            inv.fail("phi(phi^-1(A)) = A", m)
    Ubar = UEA(V.post_lie.bar_algebra(), V.trunc)
    for n in range(0, max_inverse + 1):
        for w in _basis_words(d, n):
            B = BarElement.word(d, w)
            inv.checked += 1
            if bar_normal_form(Ubar, phi_inverse(V, phi_bar(V, B))) != Ubar.normalize(w):
                inv.fail("phi^-1(phi(w)) = w", w)
    return [counts, routes, morph, inv]


def bar_normal_form(Ubar: UEA, B: BarElement):
    """PBW normal form of a word combination in U(g_bar)."""
    out = Ubar.zero()
    for w, c in B.terms.items():
        out = out + Ubar.normalize(w).scale(c)
    return out


# ---------------------------------------------------------------------------
# Magnus expansion


def magnus_suite(V: PostLieUEA, xs, N=6, bch_order=4, R=None) -> list[Report]:
    ident = Report("exp(xt) = exp*(chi(xt))")
    glike = Report("exp*(chi) is group-like")
    paths = Report("chi_series = chi_via_partitions")
    dexp = Report("dexpinv* o dexp* = id")
    ode = Report("ODE residual")
    reps = [ident, glike, paths, dexp, ode]
    for x in xs:
        chi = chi_series(V, x, N)
        lhs, rhs = exp_identity(V, x, N, chi)
        ident.checked += 1
        if lhs != rhs:
            ident.fail("termwise identity", (x, lhs.first_difference(rhs)))
        glike.checked += 1
        if series_coproduct(rhs) != series_tensor_square(rhs):
            glike.fail("D exp*(chi) = exp*(chi) x exp*(chi)", x)
        paths.checked += 1
        if chi_via_partitions(V, x, N) != chi:
            paths.fail("two routes", x)
        beta = chi.series(V, N)
        ys = Series.monomial(V, V.vector(x), 0, N)
        dexp.checked += 1
        if dexpinv_star(V, beta, dexp_star(V, beta, ys, N), N) != ys:
            dexp.fail("round trip", x)
        ode.checked += 1
        if any(ode_residual(V, x, N, chi).coeffs):
            ode.fail("residual vanishes", x)
        if R is not None:
            reps.append(bch_recursion_check(V, R, x, bch_order, "factorization"))
    return reps


# ---------------------------------------------------------------------------
# F map and factorization


def f_map_suite(V: PostLieUEA, R: LinearEndo, max_word=4) -> list[Report]:
    from postlie.partitions import phi_word

    d = V.algebra.dim
    Fm = FMap(V, R)
    eq = Report("F = phi")
    hopf = Report("F intertwines coproducts and antipodes")
    lead = Report("F leading term")
    for n in range(0, max_word + 1):
        for w in _basis_words(d, n):
            F = Fm.word(w)
            eq.checked += 1
            if F != phi_word(V, w):
                eq.fail("F(w) = phi(w)", w)
            lead.checked += 1
            if F.homogeneous(n) != V.normalize(w).homogeneous(n):
                lead.fail("F(w) = w + lower", w)
            B = BarElement.word(d, w)
            hopf.checked += 2
            if Fm.coproduct_then_f(B) != V.coproduct(F):
                hopf.fail("(F x F) D_R = D F", w)
            if Fm(FMap.bar_antipode(B)) != V.star_antipode(F):
                hopf.fail("F S_R = S* F", w)
    prod = Report("star through F")
    dec = Report("decomposition")
    mons = _monomials(V, max_word)
    for a in mons:
        A = V.monomial(a)
        dec.checked += 1
        if Fm.reconstruct(Fm.decompose(A)) != A:
            dec.fail("reconstruction", a)
        for b in mons:
            if len(a) + len(b) > max_word:
                continue
            B = V.monomial(b)
            s = V.star(A, B)
            prod.checked += 2
            if Fm.star_push(A, B) != s:
                prod.fail("F(F^-1 A . F^-1 B) = A * B", (a, b))
            if Fm.star_sandwich(A, B) != s:
                prod.fail("R+(A'1) B S(R-(A'2)) = A * B", (a, b))
    return [eq, lead, hopf, prod, dec]


def factorization_suite(V: PostLieUEA, R: LinearEndo, xs, N=6) -> list[Report]:
    star = Report("exp*(x) = exp(x+) exp(-x-)")
    chi = Report("exp(x) = exp(chi+) exp(-chi-)")
    for x in xs:
        f = grouplike_factorize_star(V, R, x, N)
        star.checked += 1
        if not f.ok:
            star.fail("factorization and uniqueness", (x, f.first_difference(), f.unique))
        g = exp_factorize(V, R, x, N)
        chi.checked += 1
        if not g.ok:
            chi.fail("factorization and uniqueness", (x, g.first_difference(), g.unique))
    return [star, chi]


def default_points(d):
    """A few deterministic sample vectors."""
    pts = [
        tuple(Fraction(1) for _ in range(d)),
        tuple(Fraction((-1) ** i * (i + 1), i + 2) for i in range(d)),
    ]
    return pts


def full_suite(fx: Fixture, limits: Limits = Limits(), points=None):
    """Run every check that applies to the fixture, in a fixed order."""
    L = fx.algebra
    V = fx.uea()
    pts = points or default_points(L.dim)
    # nothing is checked above the truncation degree
    limits = Limits(*(min(v, fx.trunc) for v in astuple(limits)))
    yield lie_axioms(L)
    if fx.r_matrix is not None:
        yield from r_matrix_suite(L, fx.r_matrix)
    else:
        yield validate_post_lie(L, fx.product)
    yield from hopf_suite(V, limits.hopf_degree)
    yield from lift_suite(V, limits.lift_degree)
    yield from star_word_suite(V, limits.star_word)
    if L.is_abelian():
        yield symmetric_star_suite(V)
    yield from partition_suite(V, limits.phi_word, limits.phi_inverse_degree)
    yield from magnus_suite(V, pts, limits.magnus_order, limits.bch_order, fx.r_matrix)
    if fx.r_matrix is not None:
        yield from f_map_suite(V, fx.r_matrix, limits.f_word)
        if fx.r_matrix @ fx.r_matrix == LinearEndo.identity(L.dim):
            yield from factorization_suite(V, fx.r_matrix, pts, limits.factor_order)
