"""Finite-dimensional Lie algebras, classical r-matrices and post-Lie products.

Vectors of the Lie algebra are plain tuples of scalars (coordinates in the
fixed basis).  Structure constants and post-Lie tables are stored sparsely:
``table[(i, j)] = {k: c}`` meaning ``e_i * e_j = sum_k c e_k``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from postlie.scalars import format_scalar, parse_scalar

# ---------------------------------------------------------------------------
# vectors


def zero_vector(d):
    return (Fraction(0),) * d


def basis_vector(d, i):
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return tuple(v)


def vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x):
    return tuple(c * a for a in x)


def vsum(vectors, d):
    out = [Fraction(0)] * d
    for v in vectors:
        for k, a in enumerate(v):
            out[k] = out[k] + a
    return tuple(out)


def is_zero(x):
    return not any(x)


def _bilinear(table, d, x, y):
    if len(x) != d or len(y) != d:
        raise ValueError(f"expected vectors of length {d}, got {len(x)} and {len(y)}")
    out = [0] * d
    for (i, j), row in table.items():
        a = x[i]
        if not a:
            continue
        b = y[j]
        if not b:
            continue
        ab = a * b
        for k, c in row.items():
            out[k] = out[k] + c * ab
    return tuple(v if v else Fraction(0) for v in out)


def _sparse(dense, d):
    table = {}
    for i in range(d):
        for j in range(d):
            row = {k: c for k, c in enumerate(dense[i][j]) if c}
            if row:
                table[(i, j)] = row
    return table


# ---------------------------------------------------------------------------
# Lie algebras


@dataclass(frozen=True)
class LieAlgebra:
    """A Lie algebra given by structure constants ``[e_i, e_j] = sum_k c e_k``.

    ``matrices`` optionally holds a faithful matrix realization of the basis
    (needed only by the numeric factorization check).
    """

    dim: int
    labels: tuple
    table: dict = field(repr=False)
    matrices: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if len(self.labels) != self.dim:
            raise ValueError("need one label per basis element")

    def c(self, i, j, k):
        return self.table.get((i, j), {}).get(k, Fraction(0))

    def basis(self, i):
        return basis_vector(self.dim, i)

    def vector(self, coords):
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        return tuple(Fraction(c) if isinstance(c, (int, str)) else c for c in coords)

    def label_index(self, name):
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(f"unknown basis label {name!r}") from None

    def check(self):
        """Return ``(antisymmetry_failures, jacobi_failures)`` over basis tuples."""
        d = self.dim
        anti = []
        for i in range(d):
            for j in range(i, d):
                for k in range(d):
                    if self.c(i, j, k) + self.c(j, i, k) != 0:
                        anti.append((i, j, k))
        jac = []
        for i, j, k in product(range(d), repeat=3):
            ei, ej, ek = self.basis(i), self.basis(j), self.basis(k)
            s = vadd(
                vadd(bracket(self, ei, bracket(self, ej, ek)), bracket(self, ej, bracket(self, ek, ei))),
                bracket(self, ek, bracket(self, ei, ej)),
            )
            if not is_zero(s):
                jac.append((i, j, k))
        return anti, jac

    def is_abelian(self):
        return not self.table


def lie_algebra(dim, labels, dense=None, table=None, matrices=None, validate=True):
    """Build a LieAlgebra, checking antisymmetry and Jacobi unless told not to."""
    if table is None:
        table = _sparse(dense, dim)
    alg = LieAlgebra(dim, tuple(labels), table, matrices)
    if validate:
        anti, jac = alg.check()
        if anti:
            raise ValueError(f"structure constants not antisymmetric at {anti[0]}")
        if jac:
            raise ValueError(f"Jacobi identity fails on basis triple {jac[0]}")
    return alg


def bracket(L: LieAlgebra, x, y):
    return _bilinear(L.table, L.dim, x, y)


def abelian(dim, labels=None):
    labels = labels or [f"e{i}" for i in range(dim)]
    return LieAlgebra(dim, tuple(labels), {})


# ---------------------------------------------------------------------------
# matrix Lie algebras


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def _commutator(a, b):
    ab, ba = _matmul(a, b), _matmul(b, a)
    n = len(a)
    return tuple(tuple(ab[i][j] - ba[i][j] for j in range(n)) for i in range(n))


def _unit(n, i, j):
    return tuple(
        tuple(Fraction(1) if (r, c) == (i, j) else Fraction(0) for c in range(n))
        for r in range(n)
    )


def matrix_lie_algebra(matrices, coords, labels):
    """Structure constants of the span of ``matrices`` under the commutator.

    ``coords(M)`` must return the coordinates of a matrix in that basis.
    """
    d = len(matrices)
    table = {}
    for i in range(d):
        for j in range(d):
            row = {k: c for k, c in enumerate(coords(_commutator(matrices[i], matrices[j]))) if c}
            if row:
                table[(i, j)] = row
    return LieAlgebra(d, tuple(labels), table, tuple(matrices))


def gl(n: int) -> LieAlgebra:
    """gl(n) in the elementary basis E_ij, ordered row-major (E11, E12, ...)."""
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            mats.append(_unit(n, i, j))
            labels.append(f"E{i + 1}{j + 1}")

    def coords(m):
        return [m[i][j] for i in range(n) for j in range(n)]

    return matrix_lie_algebra(mats, coords, labels)


def sl(n: int) -> LieAlgebra:
    """sl(n) with Cartan basis H_i = E_ii - E_{i+1,i+1} and root vectors E_ij.

    Basis order: for sl(2) it is (h, e, f); in general the H_i first, then
    E_ij with i<j (row-major), then E_ij with i>j.
    """
    if n < 2:
        raise ValueError("sl(n) needs n >= 2")
    mats, labels = [], []
    for i in range(n - 1):
        h = [list(r) for r in _unit(n, i, i)]
        h[i + 1][i + 1] = Fraction(-1)
        mats.append(tuple(tuple(r) for r in h))
        labels.append("h" if n == 2 else f"H{i + 1}")
    upper = [(i, j) for i in range(n) for j in range(n) if i < j]
    lower = [(i, j) for i in range(n) for j in range(n) if i > j]
    for i, j in upper + lower:
        mats.append(_unit(n, i, j))
    if n == 2:
        labels += ["e", "f"]
    else:
        labels += [f"E{i + 1}{j + 1}" for i, j in upper + lower]
    offdiag = upper + lower

    def coords(m):
        diag = []
        acc = Fraction(0)
        for i in range(n - 1):
            acc += m[i][i]
            diag.append(acc)
        return diag + [m[i][j] for i, j in offdiag]

    return matrix_lie_algebra(mats, coords, labels)


# ---------------------------------------------------------------------------
# linear endomorphisms


@dataclass(frozen=True)
class LinearEndo:
    """Linear map on coordinates: ``(R x)_k = sum_i m[k][i] x_i``."""

    m: tuple

    @property
    def dim(self):
        return len(self.m)

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(Fraction(c) if isinstance(c, (int, str)) else c for c in r) for r in rows))

    @classmethod
    def identity(cls, d):
        return cls(tuple(basis_vector(d, i) for i in range(d)))

    @classmethod
    def zero(cls, d):
        return cls(tuple(zero_vector(d) for _ in range(d)))

    @classmethod
    def diagonal(cls, diag):
        d = len(diag)
        return cls(tuple(tuple(Fraction(diag[i]) if i == j else Fraction(0) for j in range(d)) for i in range(d)))

    def __call__(self, x):
        if len(x) != self.dim:
            raise ValueError(f"expected vector of length {self.dim}")
        out = []
        for row in self.m:
            s = Fraction(0)
            for c, a in zip(row, x):
                if c and a:
                    s = s + c * a
            out.append(s)
        return tuple(out)

    def __add__(self, other):
        return LinearEndo(tuple(vadd(r, s) for r, s in zip(self.m, other.m)))

    def __sub__(self, other):
        return LinearEndo(tuple(vsub(r, s) for r, s in zip(self.m, other.m)))

    def __neg__(self):
        return LinearEndo(tuple(vscale(-1, r) for r in self.m))

    def scale(self, c):
        return LinearEndo(tuple(vscale(c, r) for r in self.m))

    def __matmul__(self, other):
        """Composition ``self o other``."""
        d = self.dim
        return LinearEndo(
            tuple(
                tuple(sum((self.m[i][k] * other.m[k][j] for k in range(d)), Fraction(0)) for j in range(d))
                for i in range(d)
            )
        )

    def __eq__(self, other):
        if not isinstance(other, LinearEndo):
            return NotImplemented
        return all(a == b for r, s in zip(self.m, other.m) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.m)


def projection(d, indices):
    """Coordinate projection onto the span of the given basis indices."""
    keep = set(indices)
    return LinearEndo.diagonal([1 if i in keep else 0 for i in range(d)])


def triangular_r(L: LieAlgebra) -> LinearEndo:
    """The splitting r-matrix ``R = pi_+ - pi_-`` of a matrix Lie algebra.

    ``pi_+`` projects onto basis elements that are upper triangular
    (diagonal included), ``pi_-`` onto the strictly lower triangular ones.
    The basis must be adapted, i.e. every basis matrix is either upper or
    strictly lower triangular.
    """
    if L.matrices is None:
        raise ValueError("triangular splitting needs a matrix realization")
    signs = []
    for m in L.matrices:
        n = len(m)
        lower = any(m[i][j] for i in range(n) for j in range(n) if i > j)
        upper = any(m[i][j] for i in range(n) for j in range(n) if i <= j)
        if lower and upper:
            raise ValueError("basis is not adapted to the triangular splitting")
        signs.append(-1 if lower else 1)
    return LinearEndo.diagonal(signs)


# ---------------------------------------------------------------------------
# r-matrices


@dataclass
class Report:
    """Outcome of an exhaustive identity check.

    ``failures`` holds ``(identity, basis_tuple)`` pairs.
    """

    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, identity, where):
        self.failures.append((identity, where))

    def merge(self, other):
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        s = f"{status} {self.name} ({self.checked} checks"
        if self.failures:
            s += f", {len(self.failures)} failures; first: {self.failures[0]}"
        return s + ")"


def b_r(L, R, x, y):
    Rx, Ry = R(x), R(y)
    return vsub(R(vadd(bracket(L, Rx, y), bracket(L, x, Ry))), bracket(L, Rx, Ry))


def check_mcybe(L: LieAlgebra, R: LinearEndo, theta=Fraction(1)) -> Report:
    """Check ``B_R(x, y) = theta [x, y]`` on basis pairs and the cyclic
    condition ``[B_R(x,y),z] + [B_R(z,x),y] + [B_R(y,z),x] = 0`` on triples.

    The cyclic condition is what the Jacobi identity of ``[.,.]_R`` needs;
    it follows from the first, but is checked on its own.
    """
    d = L.dim
    if R.dim != d:
        raise ValueError("r-matrix dimension does not match the algebra")
    rep = Report(f"MCYBE(theta={format_scalar(theta)})")
    e = [L.basis(i) for i in range(d)]
    B = {}
    for i in range(d):
        for j in range(d):
            B[i, j] = b_r(L, R, e[i], e[j])
            rep.checked += 1
            if B[i, j] != vscale(theta, bracket(L, e[i], e[j])):
                rep.fail("B_R(x,y) = theta[x,y]", (L.labels[i], L.labels[j]))
    for i, j, k in product(range(d), repeat=3):
        rep.checked += 1
        s = vadd(
            vadd(bracket(L, B[i, j], e[k]), bracket(L, B[k, i], e[j])),
            bracket(L, B[j, k], e[i]),
        )
        if not is_zero(s):
            rep.fail("cyclic B_R condition", (L.labels[i], L.labels[j], L.labels[k]))
    return rep


def r_plus_minus(R: LinearEndo):
    """Return ``(R_+, R_-) = ((R + id)/2, (R - id)/2)``."""
    half = Fraction(1, 2)
    one = LinearEndo.identity(R.dim)
    return (R + one).scale(half), (R - one).scale(half)


def double_bracket(L, R, x, y):
    """``[x, y]_R = ([Rx, y] + [x, Ry]) / 2``."""
    return vscale(Fraction(1, 2), vadd(bracket(L, R(x), y), bracket(L, x, R(y))))


def r_bracket_algebra(L, R) -> LieAlgebra:
    """The Lie algebra ``g_R`` carried by the double bracket."""
    d = L.dim
    dense = [[double_bracket(L, R, L.basis(i), L.basis(j)) for j in range(d)] for i in range(d)]
    return LieAlgebra(d, L.labels, _sparse(dense, d))


# ---------------------------------------------------------------------------
# post-Lie products


@dataclass(frozen=True)
class PostLieProduct:
    """A product ``e_i |> e_j = sum_k t e_k`` on a Lie algebra."""

    algebra: LieAlgebra
    table: dict = field(repr=False)
    provenance: str = "explicit"
    r_matrix: LinearEndo | None = field(default=None, repr=False)

    def __call__(self, x, y):
        return _bilinear(self.table, self.algebra.dim, x, y)

    def t(self, i, j, k):
        return self.table.get((i, j), {}).get(k, Fraction(0))

    def bar_bracket(self, x, y):
        """``[[x, y]] = x |> y - y |> x + [x, y]``."""
        return vadd(vsub(self(x, y), self(y, x)), bracket(self.algebra, x, y))

    def bar_algebra(self) -> LieAlgebra:
        L = self.algebra
        d = L.dim
        dense = [[self.bar_bracket(L.basis(i), L.basis(j)) for j in range(d)] for i in range(d)]
        return LieAlgebra(d, L.labels, _sparse(dense, d))

    def is_zero(self):
        return not self.table


def post_lie_product(L, dense=None, table=None):
    if table is None:
        table = _sparse(dense, L.dim)
    return PostLieProduct(L, table, "explicit")


def zero_product(L):
    return PostLieProduct(L, {}, "explicit")


def post_lie_from_r(L: LieAlgebra, R: LinearEndo) -> PostLieProduct:
    """``x |> y = [R_- x, y]``."""
    _, Rm = r_plus_minus(R)
    d = L.dim
    dense = [[bracket(L, Rm(L.basis(i)), L.basis(j)) for j in range(d)] for i in range(d)]
    return PostLieProduct(L, _sparse(dense, d), "derived-from-R", R)


def associator(P, x, y, z):
    return vsub(P(x, P(y, z)), P(P(x, y), z))


def validate_post_lie(L: LieAlgebra, P: PostLieProduct) -> Report:
    """Both post-Lie axioms and the Jacobi identity of ``[[.,.]]``, on all basis triples."""
    d = L.dim
    rep = Report("post-Lie axioms")
    e = [L.basis(i) for i in range(d)]
    lab = L.labels
    for i, j, k in product(range(d), repeat=3):
        x, y, z = e[i], e[j], e[k]
        rep.checked += 3
        lhs = P(x, bracket(L, y, z))
        rhs = vadd(bracket(L, P(x, y), z), bracket(L, y, P(x, z)))
        if lhs != rhs:
            rep.fail("x|>[y,z] = [x|>y,z] + [y,x|>z]", (lab[i], lab[j], lab[k]))
        lhs = P(bracket(L, x, y), z)
        rhs = vsub(associator(P, x, y, z), associator(P, y, x, z))
        if lhs != rhs:
            rep.fail("[x,y]|>z = a(x,y,z) - a(y,x,z)", (lab[i], lab[j], lab[k]))
        bb = P.bar_bracket
        jac = vadd(vadd(bb(x, bb(y, z)), bb(y, bb(z, x))), bb(z, bb(x, y)))
        if not is_zero(jac):
            rep.fail("Jacobi for [[.,.]]", (lab[i], lab[j], lab[k]))
    return rep


def affine_vector_fields(n: int):
    """Abelian Lie algebra of affine vector fields on R^n with the flat
    connection ``(f.grad) g`` as product; a pre-Lie algebra.

    Basis: ``d_i`` (constant fields) then ``x_j d_i``.
    Returns ``(L, P)``.
    """
    # a field is an affine map v(x) = b + A x; store as (b, A)
    fields, labels = [], []
    for i in range(n):
        fields.append((i, None))
        labels.append(f"d{i + 1}")
    for i in range(n):
        for j in range(n):
            fields.append((i, j))
            labels.append(f"x{j + 1}d{i + 1}")
    d = len(fields)
    index = {f: k for k, f in enumerate(fields)}
    table = {}
    # (f |> g)_m = sum_l f_l * d_l g_m ; with g = x_j d_i, d_l g_i = delta_{lj}
    for a, (fi, fj) in enumerate(fields):
        for b, (gi, gj) in enumerate(fields):
            if gj is None:
                continue
            # d_{gj} of g's component gi equals 1; f's component at gj
            if fi != gj:
                continue
            # f_gj is 1 (if f constant) or x_fj (if f linear)
            k = index[(gi, None)] if fj is None else index[(gi, fj)]
            table[(a, b)] = {k: Fraction(1)}
    L = LieAlgebra(d, tuple(labels), {})
    return L, PostLieProduct(L, table, "explicit")


# ---------------------------------------------------------------------------
# JSON input


def _read_table(entries, d, what):
    table = {}
    for entry in entries:
        if len(entry) != 3:
            raise ValueError(f"{what} entries are [i, j, [[k, scalar], ...]]")
        i, j, row = entry
        if not (0 <= i < d and 0 <= j < d):
            raise ValueError(f"{what} index out of range: {(i, j)}")
        vals = {}
        for k, c in row:
            if not 0 <= k < d:
                raise ValueError(f"{what} target index out of range: {k}")
            vals[k] = vals.get(k, Fraction(0)) + parse_scalar(c)
        vals = {k: c for k, c in vals.items() if c}
        if vals:
            table[(i, j)] = vals
    return table


@dataclass
class AlgebraFile:
    algebra: LieAlgebra
    r_matrix: LinearEndo | None
    theta: Fraction
    product: PostLieProduct | None


def load_algebra(source, check=True) -> AlgebraFile:
    """Read the JSON algebra description (a path or an already-parsed dict).

    Bracket entries missing their antisymmetric partner get it filled in;
    contradictory explicit partners are left for validation to reject.
    With ``check=False`` a bracket breaking the Lie axioms is accepted so
    the caller can report it.
    """
    if isinstance(source, dict):
        data = source
    else:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("algebra file must hold a JSON object")
    d = data.get("dim")
    if not isinstance(d, int) or d < 1:
        raise ValueError("'dim' must be a positive integer")
    labels = data.get("labels") or [f"e{i}" for i in range(d)]
    if len(labels) != d:
        raise ValueError("'labels' must have 'dim' entries")
    table = _read_table(data.get("bracket", []), d, "bracket")
    for (i, j), row in list(table.items()):
        if (j, i) not in table and i != j:
            table[(j, i)] = {k: -c for k, c in row.items()}
    matrices = None
    if "matrices" in data:
        matrices = tuple(tuple(tuple(parse_scalar(c) for c in r) for r in m) for m in data["matrices"])
    L = LieAlgebra(d, tuple(labels), table, matrices)
    anti, jac = L.check() if check else ([], [])
    if anti:
        raise ValueError(f"bracket not antisymmetric at {anti[0]}")
    if jac:
        raise ValueError(f"bracket violates Jacobi at {jac[0]}")
    R = None
    if "R" in data:
        rows = data["R"]
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError("'R' must be a dim x dim array")
        R = LinearEndo(tuple(tuple(parse_scalar(c) for c in r) for r in rows))
    theta = parse_scalar(data.get("theta", "1"))
    P = None
    if "post_lie" in data:
        P = PostLieProduct(L, _read_table(data["post_lie"], d, "post_lie"), "explicit")
    return AlgebraFile(L, R, theta, P)


def dump_algebra(L: LieAlgebra, R: LinearEndo | None = None, theta=Fraction(1), product=None) -> dict:
    """Inverse of :func:`load_algebra` (as a JSON-ready dict)."""
    out = {"dim": L.dim, "labels": list(L.labels)}
    out["bracket"] = [
        [i, j, [[k, format_scalar(c)] for k, c in sorted(row.items())]]
        for (i, j), row in sorted(L.table.items())
    ]
    if L.matrices is not None:
        out["matrices"] = [[[format_scalar(c) for c in r] for r in m] for m in L.matrices]
    if R is not None:
        out["R"] = [[format_scalar(c) for c in r] for r in R.m]
    out["theta"] = format_scalar(theta)
    if product is not None and product.provenance == "explicit":
        out["post_lie"] = [
            [i, j, [[k, format_scalar(c)] for k, c in sorted(row.items())]]
            for (i, j), row in sorted(product.table.items())
        ]
    return out
