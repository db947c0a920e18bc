"""The universal enveloping algebra U(g) in PBW normal form.

A PBW monomial is a nondecreasing tuple of basis indices; ``()`` is the
unit.  Words are brought to normal form by repeatedly rewriting the first
descent ``... a b ...`` (``a > b``) as ``... b a ... + ... [a,b] ...``.
Every rewrite either sorts further or lowers the length, so this ends.

Elements carry a PBW degree cap ``trunc``: monomials of higher degree are
dropped.  The cap is not multiplicative (normal ordering lowers degree), so
exact statements about exponentials are made on t-graded :class:`Series`,
where the coefficient of ``t^n`` never exceeds degree ``n``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from postlie.algebra import LieAlgebra
from postlie.scalars import format_scalar

DEFAULT_TRUNC = 6


def _acc(out, key, c):
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Element:
    """A finite linear combination of PBW monomials."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent, terms=None):
        self.parent = parent
        self.terms = {}
        if terms:
            trunc = parent.trunc
            for m, c in terms.items():
                if c and len(m) <= trunc:
                    self.terms[m] = c

    @classmethod
    def _raw(cls, parent, terms):
        el = cls.__new__(cls)
        el.parent = parent
        el.terms = terms
        return el

    # -- linear structure -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return Element._raw(self.parent, out)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return Element._raw(self.parent, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.parent.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if not c:
            return Element._raw(self.parent, {})
        out = {}
        for m, v in self.terms.items():
            w = v * c
            if w:
                out[m] = w
        return Element._raw(self.parent, out)

    def __truediv__(self, n):
        return self.scale(Fraction(1) / n)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    # -- grading ----------------------------------------------------------
    def degree(self):
        return max((len(m) for m in self.terms), default=-1)

    def homogeneous(self, k):
        return Element._raw(self.parent, {m: c for m, c in self.terms.items() if len(m) == k})

    def coefficient(self, monomial):
        return self.terms.get(tuple(monomial), Fraction(0))

    def counit(self):
        return self.terms.get((), Fraction(0))

    def is_primitive_degree(self):
        """True if only degree-1 monomials occur (a Lie element)."""
        return all(len(m) == 1 for m in self.terms)

    def to_vector(self):
        """Coordinates of a Lie element; raises if higher degrees occur."""
        if not self.is_primitive_degree():
            raise ValueError("element is not of pure degree 1")
        d = self.parent.algebra.dim
        out = [Fraction(0)] * d
        for (i,), c in self.terms.items():
            out[i] = c
        return tuple(out)

    def __repr__(self):
        return f"Element({format_element(self)})"

    def __str__(self):
        return format_element(self)


def format_element(el: Element) -> str:
    """Deterministic text form ``coeff·label1*label2 + ...`` in PBW order."""
    if not el.terms:
        return "0"
    labels = el.parent.algebra.labels
    parts = []
    for m in sorted(el.terms, key=lambda m: (len(m), m)):
        c = el.terms[m]
        mono = "*".join(labels[i] for i in m) if m else "1"
        parts.append((c, mono))
    out = []
    for n, (c, mono) in enumerate(parts):
        exact = isinstance(c, (int, Fraction))
        neg = exact and c < 0
        s = format_scalar(-c if neg else c)
        body = f"{s}·{mono}" if exact else f"({s})·{mono}"
        if n == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class Tensor:
    """An element of U(g) (x) U(g): ``{(m1, m2): coeff}``."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent, terms=None):
        self.parent = parent
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = c

    @classmethod
    def from_pair(cls, A: Element, B: Element):
        out = {}
        for m1, c1 in A.terms.items():
            for m2, c2 in B.terms.items():
                _acc(out, (m1, m2), c1 * c2)
        t = cls(A.parent)
        t.terms = out
        return t

    def __add__(self, other):
        if not isinstance(other, Tensor):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        t = Tensor(self.parent)
        t.terms = out
        return t

    __radd__ = __add__

    def __neg__(self):
        t = Tensor(self.parent)
        t.terms = {k: -c for k, c in self.terms.items()}
        return t

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Tensor(self.parent, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, Tensor):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def flip(self):
        t = Tensor(self.parent)
        t.terms = {(b, a): c for (a, b), c in self.terms.items()}
        return t

    def pairs(self):
        """Iterate ``(coeff, left Element, right Element)``."""
        U = self.parent
        for (a, b), c in self.terms.items():
            yield c, U.monomial(a), U.monomial(b)

    def mul(self, other, product=None):
        """Componentwise product ``(a (x) b)(c (x) d) = ac (x) bd``."""
        U = self.parent
        product = product or U.mul_monomials
        out = {}
        for (a, b), c1 in self.terms.items():
            for (p, q), c2 in other.terms.items():
                left = product(a, p)
                right = product(b, q)
                c = c1 * c2
                for m1, v1 in left.items():
                    cv = c * v1
                    for m2, v2 in right.items():
                        _acc(out, (m1, m2), cv * v2)
        t = Tensor(U)
        t.terms = out
        return t

    def multiply(self, product=None) -> Element:
        """Apply the multiplication map ``a (x) b -> ab``."""
        U = self.parent
        product = product or U.mul_monomials
        out = {}
        for (a, b), c in self.terms.items():
            for m, v in product(a, b).items():
                _acc(out, m, c * v)
        return U.element(out)

    def map(self, f, g) -> "Tensor":
        """``(f (x) g)`` for linear maps on Elements."""
        out = Tensor(self.parent)
        for c, a, b in self.pairs():
            out = out + Tensor.from_pair(f(a), g(b)).scale(c)
        return out

    def __repr__(self):
        labels = self.parent.algebra.labels

        def name(m):
            return "*".join(labels[i] for i in m) if m else "1"

        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], len(kv[0][1]), kv[0][1]))
        return " + ".join(f"{format_scalar(c)}·{name(a)}⊗{name(b)}" for (a, b), c in items) or "0"


class Triple:
    """Elements of U (x) U (x) U, used for coassociativity."""

    def __init__(self, terms):
        self.terms = {k: c for k, c in terms.items() if c}

    def __eq__(self, other):
        return self.terms == other.terms

    __hash__ = None


class UEA:
    """U(g) for a :class:`LieAlgebra`, with its cocommutative Hopf structure."""

    def __init__(self, algebra: LieAlgebra, trunc: int = DEFAULT_TRUNC):
        if trunc < 1:
            raise ValueError("truncation degree must be at least 1")
        self.algebra = algebra
        self.trunc = trunc
        self._normal = {}
        self._coproduct = {}

    def __repr__(self):
        return f"UEA({self.algebra.labels}, trunc={self.trunc})"

    # -- constructors -------------------------------------------------------
    def element(self, terms) -> Element:
        return Element(self, terms)

    def zero(self) -> Element:
        return Element._raw(self, {})

    def one(self) -> Element:
        return Element._raw(self, {(): Fraction(1)})

    def scalar(self, c) -> Element:
        return self.element({(): c})

    def letter(self, i) -> Element:
        return self.element({(i,): Fraction(1)})

    def vector(self, v) -> Element:
        """Embed a Lie algebra vector as a degree-1 element."""
        if len(v) != self.algebra.dim:
            raise ValueError("vector length does not match the algebra")
        return self.element({(i,): c for i, c in enumerate(v) if c})

    def monomial(self, m) -> Element:
        m = tuple(m)
        if list(m) != sorted(m):
            raise ValueError(f"{m} is not a PBW monomial; use normalize()")
        return self.element({m: Fraction(1)})

    def parse(self, text: str) -> Element:
        """Parse a word of labels like ``"e*f*h"`` (``"1"`` is the unit)."""
        text = text.strip()
        if text in ("", "1"):
            return self.one()
        L = self.algebra
        return self.normalize([L.label_index(s.strip()) for s in text.split("*")])

    def monomials(self, degree):
        """All PBW monomials of exactly the given degree."""
        from itertools import combinations_with_replacement

        return list(combinations_with_replacement(range(self.algebra.dim), degree))

    def monomials_upto(self, degree):
        out = []
        for k in range(degree + 1):
            out.extend(self.monomials(k))
        return out

    # -- normal form ----------------------------------------------------------
    def normal_form(self, word) -> dict:
        """Untruncated PBW expansion of a word, as ``{monomial: coeff}``."""
        word = tuple(word)
        hit = self._normal.get(word)
        if hit is not None:
            return hit
        n = len(word)
        i = 0
        while i < n - 1 and word[i] <= word[i + 1]:
            i += 1
        if i >= n - 1:
            res = {word: Fraction(1)}
        else:
            a, b = word[i], word[i + 1]
            res = dict(self.normal_form(word[:i] + (b, a) + word[i + 2 :]))
            for k, c in self.algebra.table.get((a, b), {}).items():
                for m, v in self.normal_form(word[:i] + (k,) + word[i + 2 :]).items():
                    _acc(res, m, c * v)
        self._normal[word] = res
        return res

    def normalize(self, word) -> Element:
        d = self.algebra.dim
        word = tuple(word)
        for i in word:
            if not 0 <= i < d:
                raise IndexError(f"basis index {i} out of range for dimension {d}")
        return self.element(self.normal_form(word))

    def mul_monomials(self, a, b) -> dict:
        return self.normal_form(a + b)

    def mul(self, A: Element, B: Element) -> Element:
        if A.parent.trunc != B.parent.trunc or A.parent.algebra is not B.parent.algebra:
            raise ValueError("factors live in different truncated algebras")
        trunc = self.trunc
        out = {}
        for a, ca in A.terms.items():
            for b, cb in B.terms.items():
                c = ca * cb
                for m, v in self.normal_form(a + b).items():
                    if len(m) <= trunc:
                        _acc(out, m, c * v)
        return Element._raw(self, out)

    def product(self, factors) -> Element:
        out = self.one()
        for f in factors:
            out = self.mul(out, f)
        return out

    def power(self, A, n):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, A)
        return out

    def commutator(self, A, B):
        return self.mul(A, B) - self.mul(B, A)

    # -- Hopf structure -----------------------------------------------------
    def coproduct_monomial(self, m) -> dict:
        """Unshuffle coproduct of a PBW monomial (letters are primitive)."""
        hit = self._coproduct.get(m)
        if hit is not None:
            return hit
        n = len(m)
        out = {}
        idx = range(n)
        for k in range(n + 1):
            for left in combinations(idx, k):
                s = set(left)
                a = tuple(m[i] for i in left)
                b = tuple(m[i] for i in idx if i not in s)
                _acc(out, (a, b), Fraction(1))
        self._coproduct[m] = out
        return out

    def coproduct(self, A: Element) -> Tensor:
        out = {}
        for m, c in A.terms.items():
            for k, v in self.coproduct_monomial(m).items():
                _acc(out, k, c * v)
        t = Tensor(self)
        t.terms = out
        return t

    def counit(self, A: Element):
        return A.counit()

    def antipode(self, A: Element) -> Element:
        out = {}
        for m, c in A.terms.items():
            sign = -1 if len(m) % 2 else 1
            for w, v in self.normal_form(tuple(reversed(m))).items():
                _acc(out, w, sign * c * v)
        return self.element(out)

    def coproduct_left(self, T: Tensor) -> Triple:
        """``(Delta (x) id) T``."""
        out = {}
        for (a, b), c in T.terms.items():
            for (p, q), v in self.coproduct_monomial(a).items():
                _acc(out, (p, q, b), c * v)
        return Triple(out)

    def coproduct_right(self, T: Tensor) -> Triple:
        """``(id (x) Delta) T``."""
        out = {}
        for (a, b), c in T.terms.items():
            for (p, q), v in self.coproduct_monomial(b).items():
                _acc(out, (a, p, q), c * v)
        return Triple(out)

    def antipode_left(self, T: Tensor) -> Tensor:
        """``(S (x) id) T``."""
        out = {}
        for (a, b), c in T.terms.items():
            for w, v in self.antipode(self.monomial(a)).terms.items():
                _acc(out, (w, b), c * v)
        t = Tensor(self)
        t.terms = out
        return t

    def antipode_right(self, T: Tensor) -> Tensor:
        out = {}
        for (a, b), c in T.terms.items():
            for w, v in self.antipode(self.monomial(b)).terms.items():
                _acc(out, (a, w), c * v)
        t = Tensor(self)
        t.terms = out
        return t

    # -- exponentials ---------------------------------------------------------
    def exp_trunc(self, x: Element, order: int | None = None) -> "Series":
        """``exp(t x)`` as a t-series up to ``order`` (default: ``trunc``)."""
        if x.counit():
            raise ValueError("exp_trunc needs an argument in the augmentation ideal")
        order = self.trunc if order is None else order
        return exp_series(Series.monomial(self, x, 1, order), self.mul)

    def log_trunc(self, G: "Series") -> "Series":
        """Inverse of :meth:`exp_trunc` on t-series with constant term 1."""
        return log_series(G, self.mul)


class Series:
    """Truncated power series in a formal parameter ``t`` with coefficients
    in U(g): ``coeffs[n]`` is the coefficient of ``t^n``."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs):
        self.parent = parent
        self.coeffs = list(coeffs)

    @classmethod
    def zero(cls, parent, order):
        return cls(parent, [parent.zero() for _ in range(order + 1)])

    @classmethod
    def one(cls, parent, order):
        s = cls.zero(parent, order)
        s.coeffs[0] = parent.one()
        return s

    @classmethod
    def monomial(cls, parent, A, power, order):
        s = cls.zero(parent, order)
        if power <= order:
            s.coeffs[power] = A
        return s

    @classmethod
    def from_vectors(cls, parent, vectors, order):
        """``sum_n vectors[n] t^n``; ``vectors[0]`` may be ``None``."""
        s = cls.zero(parent, order)
        for n, v in enumerate(vectors[: order + 1]):
            if v is not None:
                s.coeffs[n] = parent.vector(v)
        return s

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __add__(self, other):
        return Series(self.parent, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Series(self.parent, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Series(self.parent, [-a for a in self.coeffs])

    def scale(self, c):
        return Series(self.parent, [a.scale(c) for a in self.coeffs])

    def times(self, other, product):
        """Cauchy product using the given bilinear ``product`` on Elements."""
        N = min(self.order, other.order)
        out = []
        for n in range(N + 1):
            acc = self.parent.zero()
            for i in range(n + 1):
                a, b = self.coeffs[i], other.coeffs[n - i]
                if a and b:
                    acc = acc + product(a, b)
            out.append(acc)
        return Series(self.parent, out)

    def derivative(self):
        """``d/dt``, losing the top order."""
        return Series(self.parent, [c.scale(n) for n, c in enumerate(self.coeffs) if n > 0])

    def truncate(self, order):
        return Series(self.parent, self.coeffs[: order + 1])

    def map(self, f):
        return Series(self.parent, [f(c) for c in self.coeffs])

    def total(self) -> Element:
        """Evaluate at ``t = 1``."""
        return sum(self.coeffs, self.parent.zero())

    def __eq__(self, other):
        return isinstance(other, Series) and self.coeffs == other.coeffs

    __hash__ = None

    def first_difference(self, other):
        """Lowest order where the two series differ, or ``None``."""
        for n, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return n
        return None

    def __repr__(self):
        return "Series(" + ", ".join(f"t^{n}: {format_element(c)}" for n, c in enumerate(self.coeffs) if c) + ")"


def exp_series(s: Series, product) -> Series:
    """``sum_k s^k / k!`` for a series without constant term."""
    if s.coeffs[0]:
        raise ValueError("exponential needs a series without constant term")
    U = s.parent
    N = s.order
    out = Series.one(U, N)
    term = Series.one(U, N)
    for k in range(1, N + 1):
        term = term.times(s, product)
        out = out + term.scale(Fraction(1, factorial(k)))
    return out


def log_series(G: Series, product) -> Series:
    """``sum_k (-1)^{k+1} (G - 1)^k / k`` for a series with constant term 1."""
    U = G.parent
    if G.coeffs[0] != U.one():
        raise ValueError("logarithm needs constant term 1")
    N = G.order
    y = G - Series.one(U, N)
    out = Series.zero(U, N)
    term = Series.one(U, N)
    for k in range(1, N + 1):
        term = term.times(y, product)
        out = out + term.scale(Fraction((-1) ** (k + 1), k))
    return out


def series_coproduct(s: Series):
    U = s.parent
    return [U.coproduct(c) for c in s.coeffs]


def series_tensor_square(s: Series):
    """Coefficients of ``s (x) s`` in t, truncated at the order of ``s``."""
    N = s.order
    out = []
    for n in range(N + 1):
        acc = Tensor(s.parent)
        for i in range(n + 1):
            a, b = s.coeffs[i], s.coeffs[n - i]
            if a and b:
                acc = acc + Tensor.from_pair(a, b)
        out.append(acc)
    return out
