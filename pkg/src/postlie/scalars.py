"""Exact scalars.

Coefficients are ``fractions.Fraction`` by default.  ``Poly`` is a small
commutative polynomial ring over the rationals, used to run the engine on a
*generic* Lie algebra element whose coordinates are indeterminates.
Any object supporting ``+ - *``, comparison with ``0`` and truthiness can
serve as a coefficient; floats are accepted by the numeric routines only.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def parse_scalar(s) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are refused: they would silently lose exactness.
    """
    if isinstance(s, bool):
        raise ValueError(f"not a scalar: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad scalar string {s!r}") from exc
    raise ValueError(f"scalars must be strings 'p/q' or integers, got {s!r}")


def format_scalar(c) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, int):
        return str(c)
    return str(c)


class Poly:
    """Commutative polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    Fractions.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            if not other:
                return Poly(self.nvars)
            p = Poly(self.nvars)
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __repr__(self):
        if not self.terms:
            return "0"
        out = ""
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"a{i}" if k == 1 else f"a{i}^{k}" for i, k in enumerate(e) if k
            )
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = format_scalar(abs(c))
            body = (mono if mag == "1" else f"{mag}*{mono}") if mono else mag
            out = (f"-{body}" if sign == "-" else body) if not out else f"{out} {sign} {body}"
        return out


def symbols(n: int) -> list[Poly]:
    """Return the ``n`` indeterminates ``a0 .. a{n-1}``."""
    return [Poly.var(n, i) for i in range(n)]
