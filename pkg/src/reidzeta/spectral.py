"""Exact spectral classification of characteristic polynomials.

Decides, without approximating any root, whether an automorphism with a
given characteristic polynomial has an eigenvalue 1 (infinite Reidemeister
number), a root-of-unity eigenvalue (not tame), an eigenvalue of modulus one
(tame but not Anosov), or none of these (Anosov).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exact import INF, RatPoly, poly_gcd, squarefree_decompose, sturm_count


class InvariantViolation(AssertionError):
    """An internal consistency check failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class SpectralReport:
    poly: RatPoly
    reidemeister_finite: bool
    tame: bool
    anosov: bool
    integer_like: bool
    min_infinite_power: Optional[int]
    unit_circle_pairs: int
    p_count: int
    q_count: int

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "reidemeister_finite": self.reidemeister_finite,
            "tame": self.tame,
            "anosov": self.anosov,
            "integer_like": self.integer_like,
            "min_infinite_power": self.min_infinite_power,
            "unit_circle_pairs": self.unit_circle_pairs,
            "p_count": self.p_count,
            "q_count": self.q_count,
        }

    @property
    def verdict(self) -> str:
        if not self.reidemeister_finite:
            return "R-INFINITE"
        if not self.tame:
            return "NOT-TAME"
        return "ANOSOV" if self.anosov else "TAME"


def has_eigenvalue_one(p: RatPoly) -> bool:
    return p(1) == 0


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> RatPoly:
    """The n-th cyclotomic polynomial, by dividing x^n - 1 by Phi_d for proper divisors d."""
    p = RatPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def candidate_orders(degree: int) -> list[int]:
    """All n with phi(n) <= degree. phi(n) >= sqrt(n/2) bounds the scan at 2*degree^2 + 1."""
    return [n for n in range(1, 2 * degree * degree + 2) if euler_phi(n) <= degree]


def root_of_unity_order(p: RatPoly) -> Optional[int]:
    """Least n >= 1 with gcd(p, x^n - 1) nonconstant, or None.

    The least such n is the smallest order of a root-of-unity root of p, so it
    is found by testing divisibility by Phi_n over the admissible orders.
    """
    if p.is_constant():
        raise ValueError("root_of_unity_order needs a nonconstant polynomial")
    for n in candidate_orders(p.deg):
        if cyclotomic(n).divides(p):
            return n
    return None


def _strip_pm_one(g: RatPoly) -> RatPoly:
    for r in (1, -1):
        while not g.is_constant() and g(r) == 0:
            g = g.exact_div(RatPoly((-r, 1)))
    return g


def _trace_polynomial(g: RatPoly) -> RatPoly:
    """For palindromic g of degree 2m, the q with g(x) = x^m q(x + 1/x)."""
    if g.deg % 2:
        raise InvariantViolation(f"self-reciprocal factor of odd degree: {g}")
    m = g.deg // 2
    c = list(g.coeffs)
    if any(c[i] != c[2 * m - i] for i in range(m)):
        raise InvariantViolation(f"factor is not palindromic: {g}")
    # descending: peel off the top Laurent term with (x + 1/x)^j
    q = [Fraction(0)] * (m + 1)
    # Laurent coefficients: lau[i] multiplies x^(i - m)
    lau = c[:]
    for j in range(m, -1, -1):
        coef = lau[m + j]
        q[j] = coef
        if coef == 0 or j == 0:
            continue
        # (x + 1/x)^j expanded: binom(j, t) x^(j - 2t)
        b = 1
        for t in range(j + 1):
            lau[m + j - 2 * t] -= coef * b
            b = b * (j - t) // (t + 1)
    return RatPoly(q)


def unit_circle_pair_count(p: RatPoly) -> int:
    """Number of conjugate pairs of non-real roots with |z| = 1, with multiplicity."""
    if p.is_zero() or p(0) == 0:
        raise ValueError("unit_circle_pair_count needs p(0) != 0")
    total = 0
    for f, mult in squarefree_decompose(p):
        g = poly_gcd(f, f.reverse())
        g = _strip_pm_one(g)
        if g.is_constant():
            continue
        q = _trace_polynomial(g.monic())
        total += mult * sturm_count(q, -2, 2)
    return total


def count_real_outside(p: RatPoly) -> tuple[int, int]:
    """(#real roots > 1, #real roots < -1), counted with multiplicity."""
    p_count = q_count = 0
    for f, mult in squarefree_decompose(p):
        p_count += mult * sturm_count(f, 1, INF)
        q_count += mult * sturm_count(f, -INF, -1)
    return p_count, q_count


def is_integer_like(p: RatPoly) -> bool:
    return p.is_integral() and p(0) in (1, -1)


def classify(p: RatPoly) -> SpectralReport:
    if p.is_constant():
        raise ValueError("classify needs degree >= 1")
    p = p.monic()
    if p(0) == 0:
        raise ValueError("automorphism characteristic polynomials never vanish at 0")
    n = root_of_unity_order(p)
    pairs = unit_circle_pair_count(p)
    pc, qc = count_real_outside(p)
    tame = n is None
    anosov = tame and pairs == 0 and p(1) != 0 and p(-1) != 0
    return SpectralReport(
        poly=p,
        reidemeister_finite=n != 1,
        tame=tame,
        anosov=anosov,
        integer_like=is_integer_like(p),
        min_infinite_power=n,
        unit_circle_pairs=pairs,
        p_count=pc,
        q_count=qc,
    )


def describe(report: SpectralReport) -> str:
    lines = [
        f"char poly          {report.poly}",
        f"verdict            {report.verdict}",
        f"R finite           {report.reidemeister_finite}",
        f"tame               {report.tame}",
        f"anosov             {report.anosov}",
        f"integer-like       {report.integer_like}",
        f"n(phi)             {report.min_infinite_power if report.min_infinite_power else '-'}",
        f"unit-circle pairs  {report.unit_circle_pairs}",
        f"real > 1 / < -1    {report.p_count} / {report.q_count}",
    ]
    return "\n".join(lines)


__all__ = [
    "InvariantViolation", "SpectralReport", "candidate_orders", "classify",
    "count_real_outside", "cyclotomic", "describe", "euler_phi", "has_eigenvalue_one",
    "is_integer_like", "root_of_unity_order", "unit_circle_pair_count",
]
