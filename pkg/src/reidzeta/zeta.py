"""Reidemeister zeta functions: truncated series and exact closed form.

The closed form rests on two identities. For an integer-like M with p real
eigenvalues above 1 and q below -1,

    |det(I - M^n)| = (-1)^(p+q) * (-1)^(q n) * det(I - M^n),

and exp(sum_n det(I - M^n) w^n / n) = prod_k det(I - w Lambda^k M)^((-1)^(k+1)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .exact import IntPoly, RatPoly, char_poly, exterior_power, format_poly, poly_gcd
from .nilpotent import INFINITE, Automorphism, reidemeister_sequence
from .spectral import candidate_orders, classify, count_real_outside

DEFAULT_TERMS = 10


class NotTame(ValueError):
    def __init__(self, min_infinite_power: int):
        super().__init__(f"NotTame({min_infinite_power}): R(phi^{min_infinite_power}) is infinite")
        self.min_infinite_power = min_infinite_power


class NotIntegerLike(ValueError):
    pass


# power series over Q, truncated to a fixed number of coefficients


def series_mul(a: Sequence, b: Sequence, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[:n - i]):
                out[i + j] += ai * bj
    return out


def series_inverse(a: Sequence, n: int) -> list[Fraction]:
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / Fraction(a[0])
    out = [inv0] + [Fraction(0)] * (n - 1)
    for m in range(1, n):
        s = sum((a[j] * out[m - j] for j in range(1, min(m, len(a) - 1) + 1)), Fraction(0))
        out[m] = -s * inv0
    return out


def series_exp_log_derivative(values: Sequence, n: int) -> list[Fraction]:
    """Coefficients c_0..c_n of exp(sum_j values[j-1] z^j / j)."""
    c = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum((Fraction(values[j - 1]) * c[m - j] for j in range(1, m + 1)), Fraction(0))
        c.append(s / m)
    return c


# exterior-power determinants


def _power_sums(poly: RatPoly, count: int) -> list[int]:
    """P_0..P_count of the roots of the monic integer polynomial, by Newton's identities."""
    d = poly.deg
    e = [1] + [int((-1) ** i * poly[d - i]) for i in range(1, d + 1)]
    p = [d]
    for m in range(1, count + 1):
        s = 0
        for i in range(1, min(m, d) + 1):
            term = e[i] * (p[m - i] if i < m else m)
            s += term if i % 2 else -term
        p.append(s)
    return p


def _elementary_from_power(q: Sequence[int], k: int) -> int:
    """e_k from power sums q[1..k]."""
    e = [1]
    for j in range(1, k + 1):
        s = 0
        for i in range(1, j + 1):
            term = e[j - i] * q[i]
            s += term if i % 2 else -term
        if s % j:
            raise ArithmeticError("non-integral elementary symmetric function")
        e.append(s // j)
    return e[k]


def exterior_det_poly(chi: RatPoly, k: int) -> IntPoly:
    """det(I - w Lambda^k M) from the characteristic polynomial of M alone.

    Traces tr(Lambda^k M^n) = e_k(lambda_1^n, ..., lambda_d^n) are assembled
    from power sums of the eigenvalues, then exponentiated.
    """
    if not (chi.is_monic() and chi.is_integral()):
        raise NotIntegerLike("exterior determinant needs a monic integer polynomial")
    d = chi.deg
    if not 0 <= k <= d:
        raise ValueError(f"k = {k} out of range for degree {d}")
    size = comb(d, k)
    psums = _power_sums(chi, k * size)
    traces = [0]
    for n in range(1, size + 1):
        q = [0] + [psums[j * n] for j in range(1, k + 1)]
        traces.append(_elementary_from_power(q, k) if k else 1)
    b = [1]
    for m in range(1, size + 1):
        s = -sum(traces[j] * b[m - j] for j in range(1, m + 1))
        if s % m:
            raise ArithmeticError("non-integral determinant coefficient")
        b.append(s // m)
    return IntPoly(b)


def exterior_det_poly_matrix(m, k: int) -> IntPoly:
    """Same polynomial via the explicit matrix of k x k minors."""
    chi = char_poly(exterior_power(m, k))
    return IntPoly(reversed(chi.coeffs))


# zeta forms


@dataclass(frozen=True)
class ZetaForm:
    factors: tuple[tuple[IntPoly, int], ...]
    sign_flip: bool
    outer_exponent: int

    def _effective(self) -> list[tuple[IntPoly, int]]:
        out = []
        for f, e in self.factors:
            if self.sign_flip:
                f = IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(f.coeffs))
            out.append((f, e * self.outer_exponent))
        return out

    def series(self, n_terms: int) -> list[Fraction]:
        """Coefficients c_0..c_{n_terms} of the expanded product."""
        n = n_terms + 1
        acc = [Fraction(1)] + [Fraction(0)] * (n - 1)
        for f, e in self._effective():
            s = [Fraction(c) for c in f.coeffs[:n]]
            if e < 0:
                s = series_inverse(s, n)
            acc = series_mul(acc, s, n)
        return acc

    def combined(self) -> tuple[list[tuple[IntPoly, int]], list[tuple[IntPoly, int]]]:
        """Identical factors merged: (numerator, denominator) as (poly, power) lists."""
        net: dict[tuple[int, ...], int] = {}
        order: list[tuple[int, ...]] = []
        for f, e in self._effective():
            if f.coeffs not in net:
                order.append(f.coeffs)
                net[f.coeffs] = 0
            net[f.coeffs] += e
        num = [(IntPoly(c), net[c]) for c in order if net[c] > 0]
        den = [(IntPoly(c), -net[c]) for c in order if net[c] < 0]
        return num, den

    def as_fraction(self) -> tuple[IntPoly, IntPoly]:
        """Expanded numerator and denominator with common factors cancelled."""
        num_f, den_f = self.combined()
        num, den = RatPoly((1,)), RatPoly((1,))
        for f, e in num_f:
            num = num * f.to_rat() ** e
        for f, e in den_f:
            den = den * f.to_rat() ** e
        g = poly_gcd(num, den)
        num, den = num.exact_div(g), den.exact_div(g)
        scale = 1 / den[0]
        return IntPoly((num.scale(scale)).coeffs), IntPoly((den.scale(scale)).coeffs)

    def __str__(self) -> str:
        num, den = self.combined()

        def render(parts):
            if not parts:
                return "1"
            out = []
            for f, e in parts:
                body = f"({format_poly(f.coeffs, 'z', ascending=True)})"
                out.append(body if e == 1 else f"{body}^{e}")
            return "".join(out)

        if not den:
            return render(num)
        return f"{render(num)} / {render(den)}"

    def to_json(self) -> dict:
        return {
            "outer_exponent": self.outer_exponent,
            "sign_flip": self.sign_flip,
            "factors": [{"poly": list(f.coeffs), "exponent": e} for f, e in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> ZetaForm:
        return cls(tuple((IntPoly(f["poly"]), int(f["exponent"])) for f in data["factors"]),
                   bool(data["sign_flip"]), int(data["outer_exponent"]))


def _require_tame(phi: Automorphism) -> None:
    report = classify(phi.full_poly)
    if not report.tame:
        raise NotTame(report.min_infinite_power)


def zeta_series(phi: Automorphism, n_terms: int = DEFAULT_TERMS) -> list[Fraction]:
    """c_0..c_N of exp(sum_n R(phi^n) z^n / n), from R values of explicit matrix powers."""
    _require_tame(phi)
    values = [r for _, r in reidemeister_sequence(phi, n_terms)]
    if any(r == INFINITE for r in values):
        raise AssertionError("tame automorphism produced an infinite Reidemeister number")
    return series_exp_log_derivative(values, n_terms)


def zeta_closed_form(phi: Automorphism, method: str = "power_sums") -> ZetaForm:
    _require_tame(phi)
    chi = phi.full_poly
    if not phi.integer_like:
        raise NotIntegerLike(f"characteristic polynomial {chi} is not integer-like")
    p, q = count_real_outside(chi)
    d = chi.deg
    factors = []
    for k in range(d + 1):
        if method == "power_sums":
            f = exterior_det_poly(chi, k)
        elif method == "exterior":
            f = exterior_det_poly_matrix(phi.matrix, k)
        else:
            raise ValueError(f"unknown method {method!r}")
        factors.append((f, 1 if k % 2 else -1))
    return ZetaForm(tuple(factors), q % 2 == 1, -1 if (p + q) % 2 else 1)


@dataclass(frozen=True)
class ZetaCheck:
    ok: bool
    terms: int
    index: Optional[int] = None
    series_value: Optional[Fraction] = None
    closed_value: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_zeta(phi: Automorphism, n_terms: int = DEFAULT_TERMS,
                form: Optional[ZetaForm] = None) -> ZetaCheck:
    """Compare the closed form's expansion with the defining series coefficient by coefficient."""
    series = zeta_series(phi, n_terms)
    form = form or zeta_closed_form(phi)
    closed = form.series(n_terms)
    for i, (a, b) in enumerate(zip(series, closed)):
        if a != b:
            return ZetaCheck(False, n_terms, i, a, b)
    return ZetaCheck(True, n_terms)


def tame_bound(phi: Automorphism) -> int:
    """Largest candidate order that can witness non-tameness for this dimension."""
    return max(candidate_orders(phi.matrix.rows), default=1)


__all__ = [
    "DEFAULT_TERMS", "NotIntegerLike", "NotTame", "ZetaCheck", "ZetaForm",
    "exterior_det_poly", "exterior_det_poly_matrix", "series_exp_log_derivative",
    "series_inverse", "series_mul", "tame_bound", "verify_zeta", "zeta_closed_form",
    "zeta_series",
]
