"""Free nilpotent Lie algebras: dimensions, the c < k tameness criterion, and a sampled check.

    python3 scripts/free_nilpotent_table.py --max-k 4 --max-c 4 --samples 50

For every (k, c) the table lists graded dimensions, the criterion's verdict and,
over random unimodular actions on the generators, how many extended
automorphisms came out tame. When c >= k none may be tame.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from reidzeta.exact import RatMatrix
from reidzeta.families import (ScaleCapExceeded, extend_degree_one, free_nilpotent,
                               free_tameness, random_unimodular)
from reidzeta.spectral import classify


@dataclass(frozen=True)
class TableConfig:
    max_k: int = 4
    max_c: int = 4
    samples: int = 50
    seed: int = 0
    max_dim: int = 40


def main(cfg: TableConfig) -> None:
    rng = np.random.default_rng(cfg.seed)
    print(f"{'k':>2} {'c':>2} {'dim':>4}  {'graded dims':<16} {'criterion':>9}  sampled tame")
    for k in range(1, cfg.max_k + 1):
        for c in range(1, cfg.max_c + 1):
            try:
                alg, hall = free_nilpotent(k, c)
            except ScaleCapExceeded:
                print(f"{k:>2} {c:>2}  (over scale cap)")
                continue
            dims = str(hall.dims_per_degree)
            if alg.dim > cfg.max_dim:
                print(f"{k:>2} {c:>2} {alg.dim:>4}  {dims:<16} {str(free_tameness(k, c)):>9}  "
                      "(skipped)")
                continue
            tame = 0
            for _ in range(cfg.samples):
                phi = extend_degree_one(k, c, RatMatrix(random_unimodular(k, rng)))
                tame += classify(phi.full_poly).tame
            verdict = str(free_tameness(k, c))
            print(f"{k:>2} {c:>2} {alg.dim:>4}  {dims:<16} {verdict:>9}  {tame}/{cfg.samples}")
            if not free_tameness(k, c) and tame:
                raise SystemExit(f"criterion violated at k={k}, c={c}")


if __name__ == "__main__":
    d = TableConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=d.max_k)
    ap.add_argument("--max-c", type=int, default=d.max_c)
    ap.add_argument("--samples", type=int, default=d.samples)
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--max-dim", type=int, default=d.max_dim)
    a = ap.parse_args()
    main(TableConfig(a.max_k, a.max_c, a.samples, a.seed, a.max_dim))
