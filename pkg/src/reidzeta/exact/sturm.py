"""Sturm sequences and real-root counting over Q."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .poly import RatPoly, is_squarefree

INF = math.inf
Endpoint = Union[int, Fraction, float]


class NotSquarefree(ValueError):
    pass


def _primitive_positive(p: RatPoly) -> RatPoly:
    # Positive rescaling keeps every sign the sequence relies on.
    if p.is_zero():
        return p
    q = p.primitive().to_rat()
    return q if (q.leading > 0) == (p.leading > 0) else -q


def sturm_sequence(p: RatPoly) -> list[RatPoly]:
    seq = [_primitive_positive(p), _primitive_positive(p.derivative())]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        seq.append(_primitive_positive(r))
    return seq[:-1]


def _sign_at(p: RatPoly, x: Endpoint) -> int:
    if x == INF:
        return (p.leading > 0) - (p.leading < 0)
    if x == -INF:
        s = (p.leading > 0) - (p.leading < 0)
        return s if p.deg % 2 == 0 else -s
    v = p(Fraction(x))
    return (v > 0) - (v < 0)


def _variations(seq: list[RatPoly], x: Endpoint) -> int:
    signs = [s for s in (_sign_at(p, x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: RatPoly, lo: Endpoint, hi: Endpoint) -> int:
    """Number of distinct real roots of squarefree ``p`` in the open interval (lo, hi).

    Endpoints may be ``-math.inf`` / ``math.inf``. Roots sitting exactly on a
    finite endpoint are divided out before counting, so they are never included.
    """
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if p.is_zero():
        raise ValueError("sturm_count of the zero polynomial")
    if p.is_constant():
        return 0
    if not is_squarefree(p):
        raise NotSquarefree(f"{p} is not squarefree")
    for e in (lo, hi):
        if e not in (INF, -INF) and p(Fraction(e)) == 0:
            p = p.exact_div(RatPoly((-Fraction(e), 1)))
    if p.is_constant():
        return 0
    seq = sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)
