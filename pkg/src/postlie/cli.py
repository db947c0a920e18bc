"""Command-line front end.

Exit codes: 0 everything holds, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from postlie.algebra import (
    AlgebraFile,
    Report,
    check_mcybe,
    gl,
    load_algebra,
    post_lie_from_r,
    sl,
    triangular_r,
    validate_post_lie,
    zero_product,
)
from postlie.factor import matrix_factor_check, matrix_to_vector, NotInvolutiveError
from postlie.identities import Fixture, Limits, full_suite, lie_axioms
from postlie.lift import PostLieUEA
from postlie.magnus import (
    ChiConsistencyError,
    chi2_closed,
    chi3_closed,
    chi_expressions,
    chi_series,
    exp_identity,
    ode_residual,
)
from postlie.partitions import enumerate_partitions, partition_table
from postlie.scalars import format_scalar, parse_scalar
from postlie.uea import format_element

BUILTINS = {
    "gl2": lambda: gl(2),
    "gl3": lambda: gl(3),
    "sl2": lambda: sl(2),
    "sl3": lambda: sl(3),
}


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    algebra: str = "builtin:gl2"
    trunc: int = 6
    mode: str = "exact"
    format: str = "text"
    seed: int = 0
    check: bool = False
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trunc < 1:
            raise InputError("--trunc must be at least 1")


def resolve_algebra(spec: str, check=True) -> AlgebraFile:
    """``builtin:NAME`` (gl2, gl3, sl2, sl3 with the triangular r-matrix) or a JSON path."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in BUILTINS:
            raise InputError(f"unknown builtin algebra {name!r}; choose from {', '.join(sorted(BUILTINS))}")
        L = BUILTINS[name]()
        return AlgebraFile(L, triangular_r(L), Fraction(1), None)
    try:
        return load_algebra(spec, check=check)
    except (OSError, json.JSONDecodeError, ValueError, TypeError, KeyError) as exc:
        raise InputError(f"cannot read algebra {spec!r}: {exc}") from exc


def fixture_of(af: AlgebraFile, trunc: int) -> Fixture:
    L = af.algebra
    if af.product is not None:
        return Fixture("file", L, af.product, af.r_matrix, trunc)
    if af.r_matrix is not None:
        return Fixture("file", L, post_lie_from_r(L, af.r_matrix), af.r_matrix, trunc)
    return Fixture("file", L, zero_product(L), None, trunc)


def _coords(v):
    return [format_scalar(c) for c in v]


def _emit(cfg, text_lines, payload):
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _report_payload(rep: Report):
    return {
        "name": rep.name,
        "ok": rep.ok,
        "checked": rep.checked,
        "failures": [[str(a), str(b)] for a, b in rep.failures],
    }


# ---------------------------------------------------------------------------
# commands


def cmd_validate(cfg: RunConfig) -> int:
    af = resolve_algebra(cfg.algebra, check=False)
    L = af.algebra
    reps = [lie_axioms(L)]
    if reps[0].ok:
        if af.r_matrix is not None:
            reps.append(check_mcybe(L, af.r_matrix, af.theta))
        P = af.product
        if P is None:
            P = post_lie_from_r(L, af.r_matrix) if af.r_matrix is not None else zero_product(L)
        reps.append(validate_post_lie(L, P))
    lines = []
    for r in reps:
        lines.append(str(r))
        for ident, where in r.failures:
            lines.append(f"  {ident} at {where}")
    _emit(cfg, lines, {"reports": [_report_payload(r) for r in reps], "ok": all(r.ok for r in reps)})
    return 0 if all(r.ok for r in reps) else 1


def _read_vector(cfg, d):
    coords = cfg.args.get("x") or []
    if coords:
        if len(coords) != d:
            raise InputError(f"expected {d} coordinates, got {len(coords)}")
        try:
            return tuple(parse_scalar(c) for c in coords)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    rng = random.Random(cfg.seed)
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))


def cmd_chi(cfg: RunConfig) -> int:
    if cfg.mode != "exact":
        raise InputError("chi runs in exact mode only")
    fx = fixture_of(resolve_algebra(cfg.algebra), cfg.trunc)
    V = fx.uea()
    L = fx.algebra
    x = _read_vector(cfg, L.dim)
    N = cfg.args.get("order") or cfg.trunc
    if N > cfg.trunc:
        raise InputError("--order exceeds --trunc")
    try:
        chi = chi_series(V, x, N)
    except ChiConsistencyError as exc:
        _emit(cfg, [f"FAIL {exc}"], {"ok": False, "error": str(exc)})
        return 1
    lines = [f"x = {_coords(x)}"]
    rows = []
    for n in range(1, N + 1):
        v = chi[n]
        expr = chi_expressions(n)
        el = format_element(V.vector(v))
        line = f"chi_{n} = {_coords(v)}  {el}"
        if expr:
            line += f"    # {expr}"
        lines.append(line)
        rows.append({"n": n, "coords": _coords(v), "element": el, "expression": expr})
    payload = {"x": _coords(x), "chi": rows}
    ok = True
    if cfg.check:
        checks = []
        lhs, rhs = exp_identity(V, x, N, chi)
        checks.append(("exp(xt) = exp*(chi(xt))", lhs == rhs))
        res = ode_residual(V, x, N, chi)
        checks.append(("ODE residual vanishes", not any(res.coeffs)))
        if N >= 2:
            checks.append(("chi_2 closed form", chi[2] == chi2_closed(fx.product, x)))
        if N >= 3:
            checks.append(("chi_3 closed form", chi[3] == chi3_closed(fx.product, x)))
        for name, good in checks:
            lines.append(f"{'PASS' if good else 'FAIL'} {name}")
        payload["checks"] = {name: good for name, good in checks}
        ok = all(g for _, g in checks)
    _emit(cfg, lines, payload)
    return 0 if ok else 1


def _read_matrix(cfg, n):
    path = cfg.args.get("matrix")
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                M = np.array(json.load(fh), dtype=float)
        except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
            raise InputError(f"cannot read matrix {path!r}: {exc}") from exc
        if M.shape != (n, n):
            raise InputError(f"matrix must be {n}x{n}")
        return M
    M = np.random.default_rng(cfg.seed).uniform(-1.0, 1.0, (n, n))
    if cfg.args.get("upper"):
        M = np.triu(M, 1)
    return M


def cmd_factorize(cfg: RunConfig) -> int:
    af = resolve_algebra(cfg.algebra)
    L = af.algebra
    if L.matrices is None:
        raise InputError("factorize needs an algebra with a matrix realization")
    if af.r_matrix is None:
        raise InputError("factorize needs an r-matrix")
    N = cfg.args.get("order") or 4
    n = len(L.matrices[0])
    X = _read_matrix(cfg, n)
    x = matrix_to_vector(L, X)
    try:
        ts = [float(parse_scalar(t)) for t in cfg.args.get("t") or ["1/4", "1/8", "1/16"]]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lo, hi = cfg.args.get("band") or (22.0, 45.0)
    tol = 1e-10
    V = PostLieUEA(post_lie_from_r(L, af.r_matrix), max(N, 1))
    try:
        rows = matrix_factor_check(V, af.r_matrix, x, ts, N)
    except NotInvolutiveError as exc:
        raise InputError(str(exc)) from exc
    except FloatingPointError as exc:
        _emit(cfg, [f"FAIL {exc}"], {"ok": False, "error": str(exc)})
        return 1
    ok = True
    for r in rows:
        if r.error <= tol:
            continue
        if r.ratio is None or not lo <= r.ratio <= hi:
            ok = False
    payload = [r.as_dict() for r in rows]
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for r in payload:
            print(json.dumps(r, sort_keys=True))
        print(("PASS" if ok else "FAIL") + f" ratios in [{lo:g}, {hi:g}]")
    return 0 if ok else 1


def cmd_partitions(cfg: RunConfig) -> int:
    n = cfg.args["n"]
    if not 1 <= n <= 12:
        raise InputError("n must lie in 1..12")
    if n <= 8:
        rows = [(pi, term) for pi, term in partition_table(None, n)]
    else:
        rows = [(pi, None) for pi in enumerate_partitions(n)]
    lines = [f"P_{n}: {len(rows)} partitions"]
    for pi, term in rows:
        lines.append(f"{pi!r:<32} {term}" if term else repr(pi))
    _emit(cfg, lines, {"n": n, "count": len(rows), "partitions": [{"blocks": [list(b) for b in pi], "term": term} for pi, term in rows]})
    return 0


def cmd_star(cfg: RunConfig) -> int:
    fx = fixture_of(resolve_algebra(cfg.algebra), cfg.trunc)
    V = fx.uea()
    a, b = cfg.args["a"], cfg.args["b"]
    try:
        A, B = V.parse(a), V.parse(b)
    except (KeyError, ValueError, IndexError) as exc:
        raise InputError(f"cannot parse word: {exc}") from exc
    S, AB = V.star(A, B), V.mul(A, B)
    out, plain, rest = format_element(S), format_element(AB), format_element(S - AB)
    lines = [f"{a} * {b} = {out}", f"  {a} {b} = {plain}", f"  {a} * {b} - {a} {b} = {rest}"]
    _emit(cfg, lines, {"a": a, "b": b, "star": out, "product": plain, "difference": rest})
    return 0


def cmd_identities(cfg: RunConfig) -> int:
    fx = fixture_of(resolve_algebra(cfg.algebra), cfg.trunc)
    rng = random.Random(cfg.seed)
    d = fx.algebra.dim
    pts = [tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)) for _ in range(2)]
    limits = Limits(magnus_order=cfg.trunc, factor_order=cfg.trunc)
    reps = []
    for rep in full_suite(fx, limits, pts):
        reps.append(rep)
        if cfg.format == "text":
            print(rep, flush=True)
    bad = next((r for r in reps if not r.ok), None)
    if cfg.format == "json":
        print(json.dumps({"reports": [_report_payload(r) for r in reps], "ok": bad is None}, sort_keys=True, indent=2))
    elif bad is not None:
        ident, where = bad.failures[0]
        print(f"first counterexample: {bad.name}: {ident} at {where}")
    return 0 if bad is None else 1


COMMANDS = {
    "validate": cmd_validate,
    "chi": cmd_chi,
    "factorize": cmd_factorize,
    "partitions": cmd_partitions,
    "star": cmd_star,
    "identities": cmd_identities,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="builtin:gl2", help="JSON file or builtin:gl2|gl3|sl2|sl3")
    common.add_argument("--trunc", type=int, default=6)
    common.add_argument("--mode", choices=["exact", "float"], default="exact")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--check", action="store_true")

    p = argparse.ArgumentParser(prog="postlie", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the Lie, MCYBE and post-Lie axioms")
    c = sub.add_parser("chi", parents=[common], help="terms of the Magnus expansion")
    c.add_argument("x", nargs="*", help="coordinates of x (default: seeded random)")
    c.add_argument("--order", type=int)
    f = sub.add_parser("factorize", parents=[common], help="numeric factorization error table")
    f.add_argument("--matrix", help="JSON n x n array (default: seeded random)")
    f.add_argument("--upper", action="store_true", help="use the strictly upper part of the random matrix")
    f.add_argument("--t", nargs="+")
    f.add_argument("--order", type=int)
    f.add_argument("--band", nargs=2, type=float)
    q = sub.add_parser("partitions", parents=[common], help="list P_n with the X_pi terms")
    q.add_argument("n", type=int)
    s = sub.add_parser("star", parents=[common], help="expand A * B")
    s.add_argument("a")
    s.add_argument("b")
    sub.add_parser("identities", parents=[common], help="run the invariant suite")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    base = {"command", "algebra", "trunc", "mode", "format", "seed", "check"}
    try:
        cfg = RunConfig(
            ns.command, ns.algebra, ns.trunc, ns.mode, ns.format, ns.seed, ns.check,
            {k: v for k, v in vars(ns).items() if k not in base},
        )
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
