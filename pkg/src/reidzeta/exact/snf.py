"""Smith normal form of integer matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple[int, ...]
    rank: int
    # U @ A @ V == diag(diagonal), U and V unimodular
    left: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)
    right: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]]) -> SNFResult:
    """Invariant factors d1 | d2 | ... with unimodular U, V such that U A V = D."""
    m = [list(map(int, r)) for r in a]
    nr = len(m)
    nc = len(m[0]) if m else 0
    u = _identity(nr)
    v = _identity(nc)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for r in m:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    t = 0
    while t < min(nr, nc):
        nz = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if m[i][j] % m[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = tuple(m[i][i] for i in range(min(nr, nc)))
    rank = sum(1 for d in diag if d)
    return SNFResult(diag, rank, tuple(map(tuple, u)), tuple(map(tuple, v)))


def lattice_index(a: Sequence[Sequence[int]]) -> int | None:
    """[Z^n : A Z^n], or None when A is singular."""
    res = smith_normal_form(a)
    if res.rank < len(a):
        return None
    out = 1
    for d in res.diagonal:
        out *= d
    return out
