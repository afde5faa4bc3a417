"""Run the full pipeline on the standard worked examples and print a report for each.

    python3 scripts/worked_examples.py [--terms N] [--json]
"""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from reidzeta.cli import analyze, format_analysis
from reidzeta.exact import RatMatrix
from reidzeta.families import abelian, anosov_witness_free32, heisenberg


@dataclass(frozen=True)
class ExamplesConfig:
    terms: int = 8
    as_json: bool = False


def cases():
    yield "Z^4, quartic x^4-2x^3-2x+1 (tame, not Anosov)", abelian(4), RatMatrix(
        [[0, 0, 0, -1], [1, 0, 0, 2], [0, 1, 0, 0], [0, 0, 1, 2]])
    yield "Z^4, two cat-map blocks (Anosov)", abelian(4), RatMatrix(
        [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]])
    yield "Z^2, cat map", abelian(2), RatMatrix([[2, 1], [1, 1]])
    yield "Z, minus identity", abelian(1), RatMatrix([[-1]])
    yield "H3, cat map on generators", heisenberg(), RatMatrix(
        [[2, 1, 0], [1, 1, 0], [0, 0, 1]])
    w = anosov_witness_free32()
    yield "free(3,2), companion of x^3-3x+1", w.algebra, w.matrix


def main(config: ExamplesConfig) -> None:
    results = {}
    for title, alg, m in cases():
        res = analyze(alg, m, None)
        if config.as_json:
            results[title] = res
            continue
        print(f"== {title}")
        print(format_analysis({**res, "reidemeister": res["reidemeister"][:config.terms]}))
    if config.as_json:
        print(json.dumps(results, indent=2))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, default=ExamplesConfig.terms)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    main(ExamplesConfig(a.terms, a.json))
