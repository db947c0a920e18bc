"""The post-Lie product lifted to U(g), and the star Hopf algebra U_*(g).

``A |> B`` is evaluated on PBW monomials by recursion on the left factor:

* ``1 |> B = B`` and ``A |> 1 = eps(A) 1``;
* a letter acts as the derivation ``d(x)``, i.e. letterwise on ``B``;
* ``x A' |> B = x |> (A' |> B) - (x |> A') |> B``.

Each call lowers the degree of the left factor, so the recursion ends.
Results are cached per monomial pair; the cache only ever receives the
same value for a key, so concurrent fills are harmless.

``A * B = A_(1) (A_(2) |> B)`` is the associative product of U_*(g).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from postlie.algebra import PostLieProduct
from postlie.uea import DEFAULT_TRUNC, UEA, Element, Series, Tensor, _acc, exp_series


class PostLieUEA(UEA):
    """U(g) together with the lifted post-Lie product of ``product``."""

    def __init__(self, product: PostLieProduct, trunc: int = DEFAULT_TRUNC):
        super().__init__(product.algebra, trunc)
        self.post_lie = product
        self._deriv = {}
        self._triangle = {}
        self._star = {}

    # -- lifted post-Lie product -------------------------------------------
    def derivation_monomial(self, i, b) -> dict:
        """``d(e_i)(b)``: sum over positions of ``b`` with ``e_i |>`` applied there."""
        key = (i, b)
        hit = self._deriv.get(key)
        if hit is not None:
            return hit
        table = self.post_lie.table
        out = {}
        for p, j in enumerate(b):
            row = table.get((i, j))
            if not row:
                continue
            head, tail = b[:p], b[p + 1 :]
            for k, c in row.items():
                for m, v in self.normal_form(head + (k,) + tail).items():
                    _acc(out, m, c * v)
        self._deriv[key] = out
        return out

    def derivation(self, x, w) -> Element:
        """``d(x)(w)`` for a Lie vector ``x`` and a PBW monomial (or Element) ``w``."""
        W = w if isinstance(w, Element) else self.monomial(w)
        out = {}
        for i, a in enumerate(x):
            if not a:
                continue
            for m, c in W.terms.items():
                for r, v in self.derivation_monomial(i, m).items():
                    _acc(out, r, a * c * v)
        return self.element(out)

    def triangle_monomials(self, a, b) -> dict:
        key = (a, b)
        hit = self._triangle.get(key)
        if hit is not None:
            return hit
        if not a:
            out = {b: Fraction(1)}
        elif not b:
            out = {}
        elif len(a) == 1:
            out = self.derivation_monomial(a[0], b)
        else:
            x, rest = a[0], a[1:]
            out = {}
            for m, c in self.triangle_monomials(rest, b).items():
                for r, v in self.derivation_monomial(x, m).items():
                    _acc(out, r, c * v)
            for m, c in self.derivation_monomial(x, rest).items():
                for r, v in self.triangle_monomials(m, b).items():
                    _acc(out, r, -c * v)
        self._triangle[key] = out
        return out

    def triangle(self, A: Element, B: Element) -> Element:
        """The lifted product ``A |> B``."""
        self._same(A, B)
        out = {}
        for a, ca in A.terms.items():
            for b, cb in B.terms.items():
                c = ca * cb
                for m, v in self.triangle_monomials(a, b).items():
                    _acc(out, m, c * v)
        return self.element(out)

    # -- star product -------------------------------------------------------
    def star_monomials(self, a, b) -> dict:
        key = (a, b)
        hit = self._star.get(key)
        if hit is not None:
            return hit
        out = {}
        for (a1, a2), c in self.coproduct_monomial(a).items():
            for m, v in self.triangle_monomials(a2, b).items():
                for r, w in self.normal_form(a1 + m).items():
                    _acc(out, r, c * v * w)
        self._star[key] = out
        return out

    def star(self, A: Element, B: Element) -> Element:
        """``A * B = A_(1) (A_(2) |> B)``."""
        self._same(A, B)
        trunc = self.trunc
        out = {}
        for a, ca in A.terms.items():
            for b, cb in B.terms.items():
                c = ca * cb
                for m, v in self.star_monomials(a, b).items():
                    if len(m) <= trunc:
                        _acc(out, m, c * v)
        return Element._raw(self, out)

    def star_fold(self, factors) -> Element:
        out = self.one()
        for f in factors:
            out = self.star(out, f)
        return out

    def star_letters(self, vectors) -> Element:
        """``x_1 * ... * x_n`` for Lie vectors."""
        return self.star_fold([self.vector(v) for v in vectors])

    def star_commutator(self, A, B):
        return self.star(A, B) - self.star(B, A)

    def star_tensor(self, T: Tensor, S: Tensor) -> Tensor:
        """Componentwise star product on U (x) U."""
        return T.mul(S, product=self.star_monomials)

    def star_multiply(self, T: Tensor) -> Element:
        return T.multiply(product=self.star_monomials)

    # -- star antipode -------------------------------------------------------
    def star_antipode_monomial(self, m) -> Element:
        """``S_*(m) = -m - sum' m'_(1) * S_*(m'_(2))`` over proper splittings."""
        cache = self.__dict__.setdefault("_santi", {})
        hit = cache.get(m)
        if hit is not None:
            return hit
        if not m:
            out = self.one()
        else:
            out = -self.monomial(m)
            n = len(m)
            for k in range(1, n):
                for left in combinations(range(n), k):
                    s = set(left)
                    a = tuple(m[i] for i in left)
                    b = tuple(m[i] for i in range(n) if i not in s)
                    out = out - self.star(self.monomial(a), self.star_antipode_monomial(b))
        cache[m] = out
        return out

    def star_antipode(self, A: Element) -> Element:
        out = self.zero()
        for m, c in A.terms.items():
            out = out + self.star_antipode_monomial(m).scale(c)
        return out

    # -- star exponentials ----------------------------------------------------
    def exp_star(self, s: Series) -> Series:
        """``exp^*`` of a t-series without constant term."""
        return exp_series(s, self.star)

    def _same(self, A, B):
        if A.parent is not self or B.parent is not self:
            if A.parent.trunc != B.parent.trunc:
                raise ValueError("factors live in different truncated algebras")
            if A.parent.algebra is not self.algebra or B.parent.algebra is not self.algebra:
                raise ValueError("factors belong to a different algebra")
