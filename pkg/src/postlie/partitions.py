"""Set partitions and the Hopf isomorphism phi: U(g_bar) -> U_*(g).

Words of U(g_bar) are kept in the tensor algebra over the basis: a
:class:`BarElement` maps tuples of basis indices (unsorted) to
coefficients.  No normal form for g_bar is needed since phi and its inverse
only ever consume words.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from postlie.lift import PostLieUEA
from postlie.uea import Element, _acc

MAX_N = 12


def bell(n: int) -> int:
    """Bell numbers through ``B_{n+1} = sum_i C(n, i) B_i``."""
    B = [1]
    for m in range(n):
        B.append(sum(comb(m, i) * B[i] for i in range(m + 1)))
    return B[n]


def restricted_growth_strings(n):
    """All ``a`` with ``a[0] = 0`` and ``a[i] <= 1 + max(a[:i])``."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


class SetPartition(tuple):
    """A partition of ``{1..n}`` stored in canonical block order: elements
    increase inside each block, blocks are sorted by their maxima."""

    def __new__(cls, blocks):
        blocks = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        blocks.sort(key=lambda b: b[-1])
        flat = sorted(i for b in blocks for i in b)
        if flat != list(range(1, len(flat) + 1)):
            raise ValueError(f"blocks do not partition 1..{len(flat)}")
        return super().__new__(cls, blocks)

    @property
    def n(self):
        return sum(len(b) for b in self)

    @property
    def blocks(self):
        return list(self)

    def is_minimal(self):
        return all(len(b) == 1 for b in self)

    def __repr__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self) + "}"


def enumerate_partitions(n: int) -> list[SetPartition]:
    """All partitions of ``{1..n}``, lexicographic in canonical form."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in 1..{MAX_N}")
    out = []
    for rgs in restricted_growth_strings(n):
        blocks = {}
        for pos, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(pos)
        out.append(SetPartition(blocks.values()))
    out.sort(key=lambda p: tuple(p))
    return out


def _chain(V: PostLieUEA, block, letters):
    """``x_{k1} |> (x_{k2} |> ( ... |> x_{kl}))`` for a block ``k1 < ... < kl``."""
    P = V.post_lie
    v = letters[block[-1] - 1]
    for k in reversed(block[:-1]):
        v = P(letters[k - 1], v)
    return v


def x_pi(V: PostLieUEA, pi: SetPartition, letters) -> Element:
    """``X_pi``: product over blocks, in canonical order, of their |>-chains."""
    if pi.n != len(letters):
        raise ValueError("partition size does not match the number of letters")
    return V.product(V.vector(_chain(V, b, letters)) for b in pi)


def phi(V: PostLieUEA, letters) -> Element:
    """``phi(x_1 . ... . x_n) = sum over all partitions of X_pi``."""
    n = len(letters)
    if n == 0:
        return V.one()
    if n > MAX_N:
        raise ValueError(f"words longer than {MAX_N} are not supported")
    out = V.zero()
    for pi in enumerate_partitions(n):
        out = out + x_pi(V, pi, letters)
    return out


def phi_recursive(V: PostLieUEA, letters) -> Element:
    """``phi(x_1 . w) = x_1 phi(w) + x_1 |> phi(w)``."""
    if not letters:
        return V.one()
    rest = phi_recursive(V, letters[1:])
    x = letters[0]
    return V.mul(V.vector(x), rest) + V.derivation(x, rest)


class BarElement:
    """A linear combination of words ``e_{i1} . ... . e_{in}`` in U(g_bar)."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        self.dim = dim
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def word(cls, dim, indices):
        return cls(dim, {tuple(indices): Fraction(1)})

    @classmethod
    def from_letters(cls, letters):
        """Multilinear expansion of a word of Lie vectors."""
        dim = len(letters[0]) if letters else 0
        terms = {(): Fraction(1)}
        for v in letters:
            nxt = {}
            for w, c in terms.items():
                for i, a in enumerate(v):
                    if a:
                        _acc(nxt, w + (i,), c * a)
            terms = nxt
        b = cls(dim)
        b.terms = terms
        return b

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        b = BarElement(self.dim)
        b.terms = out
        return b

    def __neg__(self):
        b = BarElement(self.dim)
        b.terms = {w: -c for w, c in self.terms.items()}
        return b

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return BarElement(self.dim, {w: v * c for w, v in self.terms.items()})

    def concat(self, other):
        """The product ``u . v`` of U(g_bar) on words."""
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _acc(out, w1 + w2, c1 * c2)
        b = BarElement(self.dim)
        b.terms = out
        return b

    def __eq__(self, other):
        return isinstance(other, BarElement) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def __repr__(self):
        return "BarElement(" + ", ".join(f"{c}*{'.'.join(map(str, w)) or '1'}" for w, c in sorted(self.terms.items())) + ")"


def phi_bar(V: PostLieUEA, B: BarElement) -> Element:
    """phi applied linearly to a BarElement."""
    out = V.zero()
    for w, c in B.terms.items():
        out = out + phi_word(V, w).scale(c)
    return out


def phi_word(V: PostLieUEA, word) -> Element:
    cache = V.__dict__.setdefault("_phi", {})
    hit = cache.get(word)
    if hit is None:
        hit = phi(V, [V.algebra.basis(i) for i in word])
        cache[word] = hit
    return hit


def phi_inverse_word(V: PostLieUEA, word) -> BarElement:
    """``phi^{-1}(x_1 ... x_n) = x_1 . ... . x_n - sum_{pi > 0} phi^{-1}(X_pi)``.

    ``X_pi`` is a product of ``|pi| < n`` Lie vectors; it is expanded
    multilinearly into basis words before recursing.
    """
    word = tuple(word)
    cache = V.__dict__.setdefault("_phi_inv", {})
    hit = cache.get(word)
    if hit is not None:
        return hit
    d = V.algebra.dim
    out = BarElement.word(d, word)
    n = len(word)
    if n >= 2:
        if n > MAX_N:
            raise ValueError(f"degree above {MAX_N} is not supported")
        letters = [V.algebra.basis(i) for i in word]
        for pi in enumerate_partitions(n):
            if pi.is_minimal():
                continue
            chains = [_chain(V, b, letters) for b in pi]
            for w, c in BarElement.from_letters(chains).terms.items():
                out = out - phi_inverse_word(V, w).scale(c)
    cache[word] = out
    return out


def phi_inverse(V: PostLieUEA, A: Element) -> BarElement:
    """Preimage of ``A`` under phi, read off its PBW monomials."""
    out = BarElement(V.algebra.dim)
    for m, c in A.terms.items():
        out = out + phi_inverse_word(V, m).scale(c)
    return out


def nc_bell(V: PostLieUEA, x, i: int) -> Element:
    """``m_i = phi(x . x . ... . x)`` (i copies); equals ``x^{*i}``."""
    if not 1 <= i <= 8:
        raise ValueError("order must lie in 1..8")
    return phi(V, [x] * i)


def nc_bell_chains(V: PostLieUEA, x, i: int):
    """``d_k = x |> (x |> ... (x))`` with ``k - 1`` arrows, for ``k = 1..i``."""
    P = V.post_lie
    out = [x]
    for _ in range(i - 1):
        out.append(P(x, out[-1]))
    return out


def partition_table(V: PostLieUEA, n: int, names=None):
    """Rows ``(partition, X_pi as text)`` with symbolic letters ``x1..xn``.

    Used for inspection only; letters are printed, not evaluated.
    """
    names = names or [f"x{k}" for k in range(1, n + 1)]
    rows = []
    for pi in enumerate_partitions(n):
        factors = []
        for b in pi:
            s = names[b[-1] - 1]
            for k in reversed(b[:-1]):
                s = f"{names[k - 1]}|>{s}" if len(s) <= 2 else f"{names[k - 1]}|>({s})"
            factors.append(s if len(b) == 1 or len(pi) == 1 else f"({s})")
        rows.append((pi, " ".join(factors)))
    return rows


def symmetrize_letters(letters) -> BarElement:
    """``(1/n!) sum over permutations`` of the word of letters."""
    from itertools import permutations

    n = len(letters)
    out = BarElement(len(letters[0]))
    for perm in permutations(range(n)):
        out = out + BarElement.from_letters([letters[p] for p in perm])
    return out.scale(Fraction(1, factorial(n)))


__all__ = [
    "bell",
    "enumerate_partitions",
    "SetPartition",
    "x_pi",
    "phi",
    "phi_recursive",
    "phi_bar",
    "phi_inverse",
    "phi_inverse_word",
    "BarElement",
    "nc_bell",
    "partition_table",
]
