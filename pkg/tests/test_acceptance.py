"""Acceptance criteria 1-8.

Each test prints one line ``[acceptance k] PASS|FAIL ...`` with its wall
time and the budget, then asserts.
"""

import random
import time
from fractions import Fraction
from itertools import product

import numpy as np

from postlie.algebra import (
    check_mcybe,
    double_bracket,
    gl,
    post_lie_from_r,
    sl,
    triangular_r,
    validate_post_lie,
)
from postlie.factor import FMap, matrix_factor_check, matrix_to_vector
from postlie.identities import (
    f_map_suite,
    factorization_suite,
    hopf_suite,
    lift_suite,
    partition_suite,
    star_word_suite,
)
from postlie.lift import PostLieUEA
from postlie.magnus import (
    bch_recursion_check,
    chi2_closed,
    chi3_closed,
    chi_series,
    chi_via_partitions,
    exp_identity,
    ode_residual,
)
from postlie.partitions import enumerate_partitions
from postlie.scalars import symbols
from postlie.uea import UEA


def announce(capsys, k, title, failures, elapsed, budget):
    ok = not failures and elapsed < budget
    line = f"[acceptance {k}] {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f} s, budget {budget} s)"
    if failures:
        line += f"; first failure: {failures[0]}"
    elif elapsed >= budget:
        line += "; over time budget"
    with capsys.disabled():
        print("\n" + line)
    return ok


def failures_of(reports):
    return [f"{r.name}: {r.failures[0]}" for r in reports if not r.ok]


def sample_points(d, count, seed):
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)) for _ in range(count)]


def test_acceptance_1_axioms(capsys):
    t0 = time.perf_counter()
    bad = []
    for L in (gl(2), gl(3)):
        R = triangular_r(L)
        P = post_lie_from_r(L, R)
        bad += failures_of([check_mcybe(L, R), validate_post_lie(L, P)])
        for i, j in product(range(L.dim), repeat=2):
            x, y = L.basis(i), L.basis(j)
            if P.bar_bracket(x, y) != double_bracket(L, R, x, y):
                bad.append(f"[[x,y]] != [x,y]_R at {L.labels[i], L.labels[j]}")
    assert announce(capsys, 1, "MCYBE, post-Lie axioms, [[.,.]] = [.,.]_R on gl(2), gl(3)", bad, time.perf_counter() - t0, 5)


def test_acceptance_2_hopf(capsys):
    t0 = time.perf_counter()
    reps = hopf_suite(UEA(sl(2), 6), 4)
    bad = failures_of(reps)
    assert announce(capsys, 2, "Hopf axioms of U(sl2) on PBW monomials of degree <= 4", bad, time.perf_counter() - t0, 30)


def test_acceptance_3_lifted_product(capsys):
    t0 = time.perf_counter()
    L = sl(2)
    V = PostLieUEA(post_lie_from_r(L, triangular_r(L)), 6)
    reps = lift_suite(V, 5) + star_word_suite(V, 4)
    bad = failures_of(reps)
    n = sum(r.checked for r in reps)
    assert announce(capsys, 3, f"lifted-product suite over sl(2), total degree <= 5 ({n} checks)", bad, time.perf_counter() - t0, 300)


def test_acceptance_4_partitions(capsys):
    t0 = time.perf_counter()
    bad = []
    counts = [len(enumerate_partitions(n)) for n in range(1, 7)]
    if counts != [1, 2, 5, 15, 52, 203]:
        bad.append(f"term counts {counts}")
    for L in (sl(2), gl(2)):
        V = PostLieUEA(post_lie_from_r(L, triangular_r(L)), 6)
        bad += failures_of(partition_suite(V, 5, 4))
    assert announce(capsys, 4, "Bell counts, phi = recursion = star fold (length <= 5), phi o phi^-1 = id (degree <= 4)", bad, time.perf_counter() - t0, 300)


def test_acceptance_5_magnus(capsys):
    t0 = time.perf_counter()
    bad = []
    L = gl(2)
    R = triangular_r(L)
    P = post_lie_from_r(L, R)
    # generic x: symbolic coordinates
    Vs = PostLieUEA(P, 4)
    xs = tuple(symbols(4))
    chi = chi_series(Vs, xs, 4)
    if chi[2] != chi2_closed(P, xs):
        bad.append("chi_2 closed form (generic x)")
    if chi[3] != chi3_closed(P, xs):
        bad.append("chi_3 closed form (generic x)")
    bad += failures_of([bch_recursion_check(Vs, R, xs, 4, "factorization", chi)])
    for M in (gl(2), sl(2)):
        RM = triangular_r(M)
        V = PostLieUEA(post_lie_from_r(M, RM), 6)
        for x in sample_points(M.dim, 2, seed=11):
            c = chi_series(V, x, 6)  # primitivity is enforced term by term
            if any(len(m) != 1 for n in range(1, 7) for m in V.vector(c[n]).terms):
                bad.append(f"chi not primitive for {x}")
            lhs, rhs = exp_identity(V, x, 6, c)
            if lhs != rhs:
                bad.append(f"exp identity fails at order {lhs.first_difference(rhs)} for {x}")
            if chi_via_partitions(V, x, 6) != c:
                bad.append(f"partition route differs for {x}")
            if any(ode_residual(V, x, 6, c).coeffs):
                bad.append(f"ODE residual nonzero for {x}")
            bad += failures_of([bch_recursion_check(V, RM, x, 4, "factorization", c)])
    assert announce(capsys, 5, "Magnus: closed forms, exp identity to order 6, primitivity, partition route, ODE, BCH to order 4", bad, time.perf_counter() - t0, 300)


def test_acceptance_6_f_map(capsys):
    t0 = time.perf_counter()
    L = gl(2)
    R = triangular_r(L)
    V = PostLieUEA(post_lie_from_r(L, R), 6)
    bad = failures_of(f_map_suite(V, R, 4))
    Fm = FMap(V, R)
    P = V.post_lie
    for i, j in product(range(4), repeat=2):
        x1, x2 = L.basis(i), L.basis(j)
        if Fm.word((i, j)) != V.mul(V.vector(x1), V.vector(x2)) + V.vector(P(x1, x2)):
            bad.append(f"F(x1.x2) at {(i, j)}")
    assert announce(capsys, 6, "F = phi, two-letter formula, Hopf intertwining, sandwich product, decomposition (degree <= 4)", bad, time.perf_counter() - t0, 300)


def test_acceptance_7_factorization(capsys):
    t0 = time.perf_counter()
    L = gl(2)
    R = triangular_r(L)
    V = PostLieUEA(post_lie_from_r(L, R), 6)
    pts = [(Fraction(0), Fraction(1), Fraction(1), Fraction(0))] + sample_points(4, 2, seed=7)
    reps = factorization_suite(V, R, pts, 6)
    bad = failures_of(reps)
    assert announce(capsys, 7, "exp*(x) = exp(x+)exp(-x-), exp(x) = exp(chi+)exp(-chi-) to order 6 with uniqueness", bad, time.perf_counter() - t0, 300)


def test_acceptance_8_matrix(capsys):
    t0 = time.perf_counter()
    L = gl(3)
    R = triangular_r(L)
    V = PostLieUEA(post_lie_from_r(L, R), 4)
    rng = np.random.default_rng(20240601)
    X = rng.uniform(-1.0, 1.0, (3, 3))
    rows = matrix_factor_check(V, R, matrix_to_vector(L, X), [0.25, 0.125, 0.0625], 4)
    bad = [f"ratio {r.ratio:.2f} at t={r.t}" for r in rows if r.ratio is None or not 22 <= r.ratio <= 45]
    for name, T in (("upper", np.triu(X, 1)), ("lower", np.tril(X, -1))):
        tri = matrix_factor_check(V, R, matrix_to_vector(L, T), [0.25, 0.125, 0.0625], 4)
        bad += [f"strictly {name} error {r.error:.2e}" for r in tri if r.error > 1e-10]
    ratios = ", ".join(f"{r.ratio:.2f}" for r in rows)
    assert announce(capsys, 8, f"gl(3) factorization error ratios [{ratios}] in [22, 45], triangular x exact", bad, time.perf_counter() - t0, 10)
