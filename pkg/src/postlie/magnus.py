"""The post-Lie Magnus expansion.

For a Lie vector ``x`` the expansion ``chi(xt) = sum_n chi_n(x) t^n`` is the
unique Lie-valued series with ``exp(xt) = exp^*(chi(xt))``.  All series here
are in the formal parameter ``t``; "order" always means the power of ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from postlie.algebra import Report, bracket, r_plus_minus, vadd, vscale, zero_vector
from postlie.lift import PostLieUEA
from postlie.partitions import enumerate_partitions, x_pi
from postlie.uea import Series


class ChiConsistencyError(RuntimeError):
    """A computed Magnus term left the Lie algebra, or two routes disagree."""


@dataclass
class MagnusSeries:
    """``terms[n]`` is ``chi_n(x)`` as a coordinate vector; ``terms[0]`` is zero."""

    x: tuple
    order: int
    terms: list

    def __getitem__(self, n):
        return self.terms[n]

    def series(self, V, order=None) -> Series:
        order = self.order if order is None else order
        return Series.from_vectors(V, [None] + self.terms[1:], order)

    def mapped(self, f) -> "MagnusSeries":
        return MagnusSeries(self.x, self.order, [f(v) for v in self.terms])

    def __eq__(self, other):
        return isinstance(other, MagnusSeries) and self.terms == other.terms


def bernoulli(n: int) -> list:
    """``b_0 .. b_n`` with ``b_1 = -1/2``."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / Fraction(m + 1))
    return b


def _to_vector(el, n):
    if el.counit() or not el.is_primitive_degree():
        raise ChiConsistencyError(f"chi_{n} is not a Lie element: {el}")
    return el.to_vector()


def chi_series(V: PostLieUEA, x, N: int) -> MagnusSeries:
    """``chi_n = x^n/n! - sum_{k=2..n} 1/k! sum_{p_1+..+p_k=n} chi_{p_1} * .. * chi_{p_k}``.

    ``comp[k][m]`` accumulates the star products over ordered compositions
    of ``m`` into ``k`` parts.
    """
    if N > V.trunc:
        raise ValueError(f"order {N} exceeds the truncation degree {V.trunc}")
    d = V.algebra.dim
    chi = [V.zero(), V.vector(x)]
    comp = {1: {1: chi[1]}}
    xpow = V.vector(x)
    for n in range(2, N + 1):
        xpow = V.mul(xpow, V.vector(x))
        for k in range(2, n + 1):
            row = comp.setdefault(k, {})
            acc = V.zero()
            for p in range(1, n - k + 2):
                left = comp[k - 1].get(n - p)
                if left is not None and chi[p]:
                    acc = acc + V.star(left, chi[p])
            row[n] = acc
        val = xpow.scale(Fraction(1, factorial(n)))
        for k in range(2, n + 1):
            val = val - comp[k][n].scale(Fraction(1, factorial(k)))
        _to_vector(val, n)
        chi.append(val)
        comp[1][n] = val
    terms = [zero_vector(d)] + [c.to_vector() for c in chi[1:]]
    return MagnusSeries(tuple(x), N, terms)


def chi_via_partitions(V: PostLieUEA, x, N: int) -> MagnusSeries:
    """``chi_n = -1/n! sum_{pi > 0_n} X_pi - sum_{k=2..n-1} 1/k! sum chi_{p_1} * .. * chi_{p_k}``."""
    if N > 8:
        raise ValueError("the partition route is limited to order 8")
    d = V.algebra.dim
    chi = [V.zero(), V.vector(x)]
    comp = {1: {1: chi[1]}}
    for n in range(2, N + 1):
        # k = n is not used for chi_n itself but feeds later orders
        for k in range(2, n + 1):
            row = comp.setdefault(k, {})
            acc = V.zero()
            for p in range(1, n - k + 2):
                left = comp[k - 1].get(n - p)
                if left is not None and chi[p]:
                    acc = acc + V.star(left, chi[p])
            row[n] = acc
        xs = [x] * n
        val = V.zero()
        for pi in enumerate_partitions(n):
            if not pi.is_minimal():
                val = val + x_pi(V, pi, xs)
        val = val.scale(Fraction(-1, factorial(n)))
        for k in range(2, n):
            val = val - comp[k][n].scale(Fraction(1, factorial(k)))
        _to_vector(val, n)
        chi.append(val)
        comp[1][n] = val
    terms = [zero_vector(d)] + [c.to_vector() for c in chi[1:]]
    return MagnusSeries(tuple(x), N, terms)


def exp_identity(V: PostLieUEA, x, N: int, chi: MagnusSeries | None = None):
    """Both sides of ``exp(xt) = exp^*(chi(xt))`` as t-series to order N."""
    chi = chi or chi_series(V, x, N)
    lhs = V.exp_trunc(V.vector(x), N)
    rhs = V.exp_star(chi.series(V, N))
    return lhs, rhs


# ---------------------------------------------------------------------------
# dexp and its inverse in U_*(g)


def _as_series(V, y, N):
    if isinstance(y, Series):
        return y.truncate(N)
    return Series.monomial(V, V.vector(y), 0, N)


def _ad_star_powers(V, beta: Series, y: Series, N):
    if beta.coeffs[0]:
        raise ValueError("beta must have no order-0 term")
    out = [y]
    for _ in range(N):
        prev = out[-1]
        out.append(beta.times(prev, V.star) - prev.times(beta, V.star))
    return out


def dexp_star(V: PostLieUEA, beta: Series, y, N: int) -> Series:
    """``sum_n ad*_beta^n (y) / (n+1)!`` to order N."""
    beta = beta.truncate(N)
    ads = _ad_star_powers(V, beta, _as_series(V, y, N), N)
    out = Series.zero(V, N)
    for n, a in enumerate(ads):
        out = out + a.scale(Fraction(1, factorial(n + 1)))
    return out


def dexpinv_star(V: PostLieUEA, beta: Series, y, N: int) -> Series:
    """``sum_n b_n ad*_beta^n (y) / n!`` to order N."""
    beta = beta.truncate(N)
    b = bernoulli(N)
    ads = _ad_star_powers(V, beta, _as_series(V, y, N), N)
    out = Series.zero(V, N)
    for n, a in enumerate(ads):
        if b[n]:
            out = out + a.scale(b[n] / factorial(n))
    return out


def ode_residual(V: PostLieUEA, x, N: int, chi: MagnusSeries | None = None) -> Series:
    """``chi' - dexpinv*_{-chi}(exp^*(-chi) |> x)`` to order ``N - 1``."""
    chi = chi or chi_series(V, x, N)
    M = N - 1
    c = chi.series(V, N)
    lhs = c.derivative().truncate(M)
    minus = (-c).truncate(M)
    e = V.exp_star(minus)
    X = V.vector(x)
    driven = e.map(lambda A: V.triangle(A, X))
    rhs = dexpinv_star(V, minus, driven, M)
    return lhs - rhs


# ---------------------------------------------------------------------------
# BCH recursion for the r-matrix case


def _vbracket_series(L, a, b, N):
    out = [zero_vector(L.dim) for _ in range(N + 1)]
    for i in range(N + 1):
        if not any(a[i]):
            continue
        for j in range(N + 1 - i):
            if any(b[j]):
                out[i + j] = vadd(out[i + j], bracket(L, a[i], b[j]))
    return out


def _vseries(v, N, d):
    s = [zero_vector(d) for _ in range(N + 1)]
    if N >= 1:
        s[1] = tuple(v)
    return s


def bch_bar(L, a, b, N: int):
    """``BCH(a, b) - a - b`` through degree 4, graded in t.

    ``a`` and ``b`` are Lie vectors (read as ``a t`` and ``b t``) or vector
    series without constant term.
    """
    if N > 4:
        raise ValueError("BCH coefficients are only carried to degree 4")
    d = L.dim
    if a and not isinstance(a[0], tuple):
        a = _vseries(a, N, d)
    if b and not isinstance(b[0], tuple):
        b = _vseries(b, N, d)
    a, b = list(a[: N + 1]), list(b[: N + 1])
    br = lambda u, v: _vbracket_series(L, u, v, N)  # noqa: E731
    ab = br(a, b)
    ba = [vscale(-1, v) for v in ab]
    terms = [
        (Fraction(1, 2), ab),
        (Fraction(1, 12), br(a, ab)),
        (Fraction(1, 12), br(b, ba)),
        (Fraction(-1, 24), br(b, br(a, ab))),
    ]
    out = [zero_vector(d) for _ in range(N + 1)]
    for c, s in terms:
        out = [vadd(o, vscale(c, v)) for o, v in zip(out, s)]
    return out


def bch_recursion(L, R, x, N: int, form="literal"):
    """Graded fixed point of a BCH recursion for chi.

    ``form="literal"``: ``chi = x + BCHbar(-R_- chi, x)``.
    ``form="factorization"``: ``chi = x + BCHbar(x, R_- chi)``, which is
    ``exp(x) exp(chi_-) = exp(chi_+)`` read through BCH.
    """
    _, Rm = r_plus_minus(R)
    d = L.dim
    xs = _vseries(x, N, d)
    chi = list(xs)
    for _ in range(N):
        rm = [Rm(v) for v in chi]
        if form == "literal":
            extra = bch_bar(L, [vscale(-1, v) for v in rm], xs, N)
        elif form == "factorization":
            extra = bch_bar(L, xs, rm, N)
        else:
            raise ValueError(f"unknown recursion form {form!r}")
        chi = [vadd(u, v) for u, v in zip(xs, extra)]
    return chi


def chi2_closed(P, x):
    """``-1/2 x |> x``."""
    return vscale(Fraction(-1, 2), P(x, x))


def chi3_closed(P, x):
    """``1/12 [x|>x, x] + 1/4 (x|>x)|>x + 1/12 x|>(x|>x)``."""
    L = P.algebra
    xx = P(x, x)
    return vadd(
        vadd(vscale(Fraction(1, 12), bracket(L, xx, x)), vscale(Fraction(1, 4), P(xx, x))),
        vscale(Fraction(1, 12), P(x, xx)),
    )


def chi2_r(L, R, x):
    """``-1/2 [R_- x, x]``."""
    _, Rm = r_plus_minus(R)
    return vscale(Fraction(-1, 2), bracket(L, Rm(x), x))


def chi3_r(L, R, x):
    """``1/4 [R_-[R_- x, x], x] + 1/12 ([[R_- x, x], x] + [R_- x, [R_- x, x]])``."""
    _, Rm = r_plus_minus(R)
    rx = Rm(x)
    c = bracket(L, rx, x)
    return vadd(
        vscale(Fraction(1, 4), bracket(L, Rm(c), x)),
        vscale(Fraction(1, 12), vadd(bracket(L, c, x), bracket(L, rx, c))),
    )


def bch_recursion_check(V: PostLieUEA, R, x, N: int = 4, form="literal", chi: MagnusSeries | None = None) -> Report:
    """Compare the BCH fixed point and the r-matrix closed forms with chi_series."""
    L = V.algebra
    chi = chi or chi_series(V, x, N)
    rep = Report(f"BCH recursion ({form})")
    fixed = bch_recursion(L, R, x, N, form)
    for n in range(1, N + 1):
        rep.checked += 1
        if fixed[n] != chi[n]:
            rep.fail("BCH fixed point = chi_series", n)
    if N >= 2:
        rep.checked += 1
        if chi2_r(L, R, x) != chi[2]:
            rep.fail("chi_2 = -1/2 [R_- x, x]", 2)
    if N >= 3:
        rep.checked += 1
        if chi3_r(L, R, x) != chi[3]:
            rep.fail("chi_3 r-matrix form", 3)
    return rep


def pre_lie_magnus(P, x, N: int):
    """Fixed point of ``Omega = sum_m b_m/m! (Omega |>)^m (x)`` on vector series."""
    d = P.algebra.dim
    b = bernoulli(N)
    xs = _vseries(x, N, d)

    def act(omega, y):
        out = [zero_vector(d) for _ in range(N + 1)]
        for i in range(N + 1):
            if not any(omega[i]):
                continue
            for j in range(N + 1 - i):
                if any(y[j]):
                    out[i + j] = vadd(out[i + j], P(omega[i], y[j]))
        return out

    omega = list(xs)
    for _ in range(N):
        acc = list(xs)
        term = xs
        for m in range(1, N):
            term = act(omega, term)
            if b[m]:
                c = b[m] / factorial(m)
                acc = [vadd(u, vscale(c, v)) for u, v in zip(acc, term)]
        omega = acc
    return omega


def chi_expressions(n):
    """Closed-form expressions of the low-order Magnus terms, as text."""
    return {
        1: "x",
        2: "-1/2 x|>x",
        3: "1/12 [x|>x, x] + 1/4 (x|>x)|>x + 1/12 x|>(x|>x)",
    }.get(n)
