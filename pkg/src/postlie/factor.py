"""r-matrix factorization: the map F, star products through F, and the
factorization of exponentials.

Words of U(g_R) are :class:`~postlie.partitions.BarElement` values.  Letters
are primitive in U(g_R), so its coproduct on a word is the unshuffle over
letter positions, and ``R_+``, ``R_-`` act on words letter by letter as
algebra maps into U(g).

    F(w) = sum over subsets I of positions:  R_+(w_I) . S(R_-(w_{I^c}))

Float arithmetic is confined to :func:`expm` and :func:`matrix_factor_check`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from postlie.algebra import LinearEndo, r_plus_minus
from postlie.lift import PostLieUEA
from postlie.magnus import MagnusSeries, chi_series
from postlie.partitions import BarElement
from postlie.uea import Element, Series, Tensor, exp_series


class NotInvolutiveError(ValueError):
    """The factorization theorems need ``R o R = id``."""


def require_involutive(R: LinearEndo):
    if R @ R != LinearEndo.identity(R.dim):
        raise NotInvolutiveError("R o R differs from the identity")


def _split_positions(n):
    idx = range(n)
    for k in range(n + 1):
        for left in combinations(idx, k):
            s = set(left)
            yield left, tuple(i for i in idx if i not in s)


class FMap:
    """``F = m o (id (x) S) o (R_+ (x) R_-) o Delta`` for a fixed r-matrix."""

    def __init__(self, V: PostLieUEA, R: LinearEndo):
        self.V = V
        self.R = R
        self.Rp, self.Rm = r_plus_minus(R)
        d = V.algebra.dim
        self._plus = [V.vector(self.Rp(V.algebra.basis(i))) for i in range(d)]
        self._minus = [V.vector(self.Rm(V.algebra.basis(i))) for i in range(d)]
        self._words = {}

    def _image(self, images, letters):
        out = self.V.one()
        for i in letters:
            out = self.V.mul(out, images[i])
        return out

    def plus_word(self, word) -> Element:
        """``R_+`` on a word: the product of ``R_+`` of its letters."""
        return self._image(self._plus, word)

    def minus_word(self, word) -> Element:
        return self._image(self._minus, word)

    def antipode_minus_word(self, word) -> Element:
        """``S(R_-(w)) = (-1)^n R_-(w_n) ... R_-(w_1)``."""
        out = self._image(self._minus, tuple(reversed(word)))
        return -out if len(word) % 2 else out

    def word(self, word) -> Element:
        word = tuple(word)
        hit = self._words.get(word)
        if hit is not None:
            return hit
        V = self.V
        out = V.zero()
        for left, right in _split_positions(len(word)):
            a = self.plus_word(tuple(word[i] for i in left))
            b = self.antipode_minus_word(tuple(word[i] for i in right))
            out = out + V.mul(a, b)
        self._words[word] = out
        return out

    def __call__(self, B: BarElement) -> Element:
        out = self.V.zero()
        for w, c in B.terms.items():
            out = out + self.word(w).scale(c)
        return out

    def inverse(self, A: Element) -> BarElement:
        """``F^{-1}`` by peeling off leading terms.

        ``F(w)`` equals the PBW normal form of ``w`` modulo lower degree, so
        the top-degree part of ``A``, read as words, is the top part of the
        preimage.
        """
        V = self.V
        out = BarElement(V.algebra.dim)
        rest = A
        while rest:
            top = rest.degree()
            lead = BarElement(V.algebra.dim, {m: c for m, c in rest.terms.items() if len(m) == top})
            out = out + lead
            rest = rest - self(lead)
            if any(len(m) >= top for m in rest.terms):
                raise ArithmeticError("F is not unitriangular on this input")
        return out

    # -- Hopf compatibility -------------------------------------------------
    def coproduct_then_f(self, B: BarElement) -> Tensor:
        """``(F (x) F) Delta_R (B)``."""
        V = self.V
        t = Tensor(V)
        for w, c in B.terms.items():
            for left, right in _split_positions(len(w)):
                a = self.word(tuple(w[i] for i in left))
                b = self.word(tuple(w[i] for i in right))
                t = t + Tensor.from_pair(a, b).scale(c)
        return t

    @staticmethod
    def bar_antipode(B: BarElement) -> BarElement:
        """``S_R`` on words: reverse and sign ``(-1)^n``."""
        return BarElement(B.dim, {tuple(reversed(w)): (-c if len(w) % 2 else c) for w, c in B.terms.items()})

    # -- decomposition and products ------------------------------------------
    def decompose(self, A: Element) -> Tensor:
        """``sum R_+(A'_(1)) (x) S(R_-(A'_(2)))`` with ``A' = F^{-1}(A)``."""
        V = self.V
        Ap = self.inverse(A)
        t = Tensor(V)
        for w, c in Ap.terms.items():
            for left, right in _split_positions(len(w)):
                a = self.plus_word(tuple(w[i] for i in left))
                b = self.antipode_minus_word(tuple(w[i] for i in right))
                t = t + Tensor.from_pair(a, b).scale(c)
        return t

    def reconstruct(self, T: Tensor) -> Element:
        return T.multiply()

    def star_push(self, A: Element, B: Element) -> Element:
        """``F(F^{-1}(A) . F^{-1}(B))``."""
        return self._trunc(self(self.inverse(A).concat(self.inverse(B))))

    def star_sandwich(self, A: Element, B: Element) -> Element:
        """``R_+(A'_(1)) B S(R_-(A'_(2)))`` with ``A' = F^{-1}(A)``."""
        V = self.V
        out = V.zero()
        for (a, b), c in self.decompose(A).terms.items():
            out = out + V.mul(V.mul(V.monomial(a), B), V.monomial(b)).scale(c)
        return self._trunc(out)

    def _trunc(self, A):
        return Element(self.V, {m: c for m, c in A.terms.items() if len(m) <= self.V.trunc})


# ---------------------------------------------------------------------------
# factorization of exponentials


def _lie_series(V, vectors, order):
    return Series.from_vectors(V, vectors, order)


@dataclass
class Factorization:
    """``lhs = exp(plus t) exp(-minus t)`` as t-series, plus the uniqueness check."""

    plus: list
    minus: list
    lhs: Series
    rhs: Series
    unique: bool
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return self.lhs == self.rhs and self.unique

    def first_difference(self):
        return self.lhs.first_difference(self.rhs)


def _reprojects(V, factor: Series, proj: LinearEndo, vectors, sign) -> bool:
    """log of the factor is Lie, and ``proj`` of it gives the factor back."""
    log = V.log_trunc(factor)
    for n, c in enumerate(log.coeffs):
        if c.counit() or not c.is_primitive_degree():
            return False
        v = c.to_vector()
        want = vectors[n] if n < len(vectors) and vectors[n] is not None else tuple(Fraction(0) for _ in v)
        want = tuple(sign * a for a in want)
        if proj(v) != v or v != want:
            return False
    return True


def _factor_series(V, R, plus, minus, order):
    Rp, Rm = r_plus_minus(R)
    ep = _exp_lie(V, plus, order)
    em = _exp_lie(V, [None if v is None else tuple(-a for a in v) for v in minus], order)
    rhs = ep.times(em, V.mul)
    unique = _reprojects(V, ep, Rp, plus, 1) and _reprojects(V, em, -Rm, minus, -1)
    return rhs, unique


def _exp_lie(V, vectors, order):
    return exp_series(_lie_series(V, vectors, order), V.mul)


def grouplike_factorize_star(V: PostLieUEA, R: LinearEndo, x, N: int) -> Factorization:
    """``exp^*(x t) = exp(x_+ t) exp(-x_- t)``."""
    require_involutive(R)
    Rp, Rm = r_plus_minus(R)
    plus = [None, Rp(x)]
    minus = [None, Rm(x)]
    lhs = V.exp_star(_lie_series(V, [None, tuple(x)], N))
    rhs, unique = _factor_series(V, R, plus, minus, N)
    return Factorization(plus, minus, lhs, rhs, unique)


def exp_factorize(V: PostLieUEA, R: LinearEndo, x, N: int, chi: MagnusSeries | None = None) -> Factorization:
    """``exp(x t) = exp(chi_+(xt)) exp(-chi_-(xt))`` with ``chi_pm = R_pm chi``."""
    require_involutive(R)
    Rp, Rm = r_plus_minus(R)
    chi = chi or chi_series(V, x, N)
    plus = [None] + [Rp(v) for v in chi.terms[1 : N + 1]]
    minus = [None] + [Rm(v) for v in chi.terms[1 : N + 1]]
    lhs = V.exp_trunc(V.vector(x), N)
    rhs, unique = _factor_series(V, R, plus, minus, N)
    return Factorization(plus, minus, lhs, rhs, unique)


# ---------------------------------------------------------------------------
# float matrix check


def expm(A, tol=1.0, max_terms=60):
    """Matrix exponential by scaling and squaring around a Taylor kernel."""
    A = np.asarray(A, dtype=float)
    norm = np.linalg.norm(A, ord=1)
    if not np.isfinite(norm):
        raise FloatingPointError("matrix has non-finite entries")
    s = max(0, int(np.ceil(np.log2(norm / 0.5))) if norm > 0.5 else 0)
    B = A / (2.0**s)
    out = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for k in range(1, max_terms + 1):
        term = term @ B / k
        out = out + term
        if np.linalg.norm(term) <= tol * np.finfo(float).eps * np.linalg.norm(out):
            break
    else:
        raise FloatingPointError("Taylor series did not converge")
    for _ in range(s):
        out = out @ out
    return out


def vector_to_matrix(L, v):
    """Matrix of a coordinate vector through the algebra's matrix realization."""
    if L.matrices is None:
        raise ValueError("the algebra carries no matrix realization")
    n = len(L.matrices[0])
    M = np.zeros((n, n))
    for c, E in zip(v, L.matrices):
        if c:
            M = M + float(c) * np.array(E, dtype=float)
    return M


def matrix_to_vector(L, X, max_denominator=1000):
    """Rational coordinates of a matrix in ``L`` (rounded to ``max_denominator``)."""
    n = len(L.matrices[0])
    basis = np.array([np.array(E, dtype=float).reshape(n * n) for E in L.matrices]).T
    coords, *_ = np.linalg.lstsq(basis, np.asarray(X, dtype=float).reshape(n * n), rcond=None)
    return tuple(Fraction(float(c)).limit_denominator(max_denominator) for c in coords)


@dataclass
class FactorRow:
    t: float
    error: float
    ratio: float | None = None

    def as_dict(self):
        return {"t": self.t, "error": self.error, "ratio": self.ratio}


def matrix_factor_check(V: PostLieUEA, R: LinearEndo, x, ts, N: int = 4, chi: MagnusSeries | None = None):
    """``E(t) = |exp(tx) - exp(chi_+(tx)) exp(-chi_-(tx))|_F`` for each ``t``.

    ``chi`` is truncated at order ``N`` so ``E(t) = O(t^(N+1))``; each row
    carries ``E(t)/E(t/2)`` computed at the same ``t``.
    """
    require_involutive(R)
    L = V.algebra
    Rp, Rm = r_plus_minus(R)
    chi = chi or chi_series(V, x, N)
    X = vector_to_matrix(L, x)
    plus = [vector_to_matrix(L, Rp(chi[n])) for n in range(1, N + 1)]
    minus = [vector_to_matrix(L, Rm(chi[n])) for n in range(1, N + 1)]

    def error(t):
        P = sum(t**n * M for n, M in enumerate(plus, start=1))
        Q = sum(t**n * M for n, M in enumerate(minus, start=1))
        return float(np.linalg.norm(expm(t * X) - expm(P) @ expm(-Q)))

    rows = []
    for t in ts:
        e, h = error(t), error(t / 2)
        rows.append(FactorRow(float(t), e, e / h if h > 0 else None))
    return rows
