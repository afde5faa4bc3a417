"""Random and exhaustive surveys of graph-algebra tameness.

Each row draws from its own PCG64 stream seeded with SeedSequence([seed, row]),
so a row can be recomputed in isolation and rows may run in any order.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .families import Graph, find_tame_witness, graph_tameness

PRNG_ID = "numpy PCG64, SeedSequence([seed, row])"
COLUMNS = ["seed", "row", "n", "edges", "components", "profile", "tame"]
MAX_VERTICES = 16


@dataclass(frozen=True)
class SurveyRow:
    seed: int
    row: int
    n: int
    edge_spec: str
    edges: int
    components: int
    profile: str
    tame: bool
    witness: Optional[str] = None  # "found" / "budget-exceeded" / None when not searched

    def cells(self, with_witness: bool) -> list[str]:
        out = [str(self.seed), str(self.row), str(self.n), str(self.edges),
               str(self.components), self.profile, "1" if self.tame else "0"]
        if with_witness:
            out.append(self.witness or "")
        return out


def row_rng(seed: int, row: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, row])))


def random_graph(n: int, rng: np.random.Generator) -> Graph:
    """G(n, 1/2): one uniform draw per vertex pair in lexicographic order."""
    pairs = list(combinations(range(1, n + 1), 2))
    draws = rng.random(len(pairs))
    return Graph(n, [p for p, u in zip(pairs, draws) if u < 0.5])


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = list(combinations(range(1, n + 1), 2))
    return Graph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


def evaluate(seed: int, row: int, g: Graph, rng: Optional[np.random.Generator],
             witness_budget: int = 0) -> SurveyRow:
    verdict = graph_tameness(g)
    witness = None
    if witness_budget and verdict.tame:
        rng = rng if rng is not None else row_rng(seed, row)
        witness = "found" if find_tame_witness(g, witness_budget, rng) else "budget-exceeded"
    return SurveyRow(seed, row, g.n, g.spec(), len(g.edges), len(verdict.partition.components),
                     verdict.partition.profile(), verdict.tame, witness)


def _random_row(args: tuple[int, int, int, int]) -> SurveyRow:
    seed, row, n, budget = args
    rng = row_rng(seed, row)
    return evaluate(seed, row, random_graph(n, rng), rng, budget)


def _exhaustive_row(args: tuple[int, int, int, int]) -> SurveyRow:
    seed, mask, n, budget = args
    return evaluate(seed, mask, graph_from_mask(n, mask), None, budget)


def run_survey(n: int, samples: Optional[int], seed: int, witness_budget: int = 0,
               exhaustive: bool = False, workers: int = 1) -> list[SurveyRow]:
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertices must be in 1..{MAX_VERTICES}")
    if exhaustive:
        count = 2 ** (n * (n - 1) // 2)
        fn = _exhaustive_row
    else:
        if samples is None or samples < 0:
            raise ValueError("samples must be a non-negative integer")
        count = samples
        fn = _random_row
    jobs = [(seed, r, n, witness_budget) for r in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(fn, jobs, chunksize=max(1, count // (4 * workers))))
    else:
        rows = [fn(j) for j in jobs]
    return sorted(rows, key=lambda r: r.row)


@dataclass(frozen=True)
class SurveyConfig:
    """Parameters of one survey run; ``samples`` is ignored when ``exhaustive`` is set."""

    vertices: int
    samples: Optional[int] = None
    seed: int = 0
    witness_budget: int = 0
    exhaustive: bool = False
    workers: int = 1

    def run(self) -> list[SurveyRow]:
        return run_survey(self.vertices, self.samples, self.seed, self.witness_budget,
                          self.exhaustive, self.workers)

    def csv(self, rows: list[SurveyRow]) -> str:
        return to_csv(rows, bool(self.witness_budget), self.vertices, self.exhaustive)


def to_csv(rows: Iterable[SurveyRow], with_witness: bool, n: int, exhaustive: bool) -> str:
    buf = io.StringIO()
    model = "all graphs" if exhaustive else "G(n,1/2)"
    buf.write(f"# reidzeta survey; prng: {PRNG_ID}; model: {model}; n={n}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS + (["witness"] if with_witness else []))
    for r in rows:
        w.writerow(r.cells(with_witness))
    return buf.getvalue()


def summary(rows: list[SurveyRow]) -> str:
    tame = sum(r.tame for r in rows)
    total = len(rows)
    frac = tame / total if total else 0.0
    text = f"tame: {tame}/{total} ({frac:.4f})"
    searched = [r for r in rows if r.witness]
    if searched:
        found = sum(r.witness == "found" for r in searched)
        text += f"; witnesses found: {found}/{len(searched)}"
    return text
