"""Empirical order of the truncated factorization exp(tx) ~ exp(chi_+) exp(-chi_-).

For each truncation order N the error should scale like t^(N+1), so the
ratio E(t)/E(t/2) approaches 2^(N+1).  Several seeded random matrices are
averaged in log space.

    python scripts/factorization_orders.py --n 3 --orders 2 3 4 5 --samples 3
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from postlie.algebra import gl, post_lie_from_r, triangular_r
from postlie.factor import matrix_factor_check, matrix_to_vector
from postlie.lift import PostLieUEA


@dataclass
class OrderConfig:
    n: int = 3
    orders: list = field(default_factory=lambda: [2, 3, 4, 5])
    ts: list = field(default_factory=lambda: [0.25, 0.125, 0.0625])
    samples: int = 3
    seed: int = 0
    json: bool = False


def run(cfg: OrderConfig):
    L = gl(cfg.n)
    R = triangular_r(L)
    rng = np.random.default_rng(cfg.seed)
    mats = [rng.uniform(-1, 1, (cfg.n, cfg.n)) for _ in range(cfg.samples)]
    rows = []
    for N in cfg.orders:
        V = PostLieUEA(post_lie_from_r(L, R), N)
        logs = []
        for X in mats:
            res = matrix_factor_check(V, R, matrix_to_vector(L, X), cfg.ts, N)
            logs.append([np.log2(r.ratio) for r in res])
        mean = np.mean(logs, axis=0)
        rows.append({"N": N, "expected": 2 ** (N + 1), "ratios": [float(2**m) for m in mean], "t": cfg.ts})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--orders", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--ts", type=float, nargs="+", default=[0.25, 0.125, 0.0625])
    ap.add_argument("--samples", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    cfg = OrderConfig(**vars(ap.parse_args()))
    rows = run(cfg)
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
        return
    print(f"gl({cfg.n}), {cfg.samples} samples, geometric mean of E(t)/E(t/2)")
    print("N   2^(N+1)   " + "   ".join(f"t={t:g}" for t in cfg.ts))
    for r in rows:
        print(f"{r['N']:<3} {r['expected']:<9} " + "   ".join(f"{x:8.2f}" for x in r["ratios"]))


if __name__ == "__main__":
    main()
