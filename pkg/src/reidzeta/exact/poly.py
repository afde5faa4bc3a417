"""Univariate polynomials with exact rational or integer coefficients.

Coefficients are stored constant term first. The zero polynomial has no
coefficients and reports ``ZERO_DEGREE`` as its degree.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class ZeroDegree(enum.Enum):
    NEG_INFINITY = "-inf"

    def __repr__(self) -> str:
        return "ZERO_DEGREE"


ZERO_DEGREE = ZeroDegree.NEG_INFINITY


class UndefinedGcd(ArithmeticError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def _strip(coeffs: Sequence) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class RatPoly:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip([_as_fraction(c) for c in coeffs]))

    # construction

    @classmethod
    def x(cls) -> RatPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> RatPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> RatPoly:
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> RatPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-_as_fraction(r), 1))
        return p

    # basic queries

    @property
    def degree(self) -> Union[int, ZeroDegree]:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def deg(self) -> int:
        """Degree as a plain int, -1 for zero. Internal convenience."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, RatPoly) else RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # arithmetic

    def __neg__(self) -> RatPoly:
        return RatPoly(-c for c in self.coeffs)

    def __add__(self, other) -> RatPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RatPoly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __sub__(self, other) -> RatPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> RatPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> RatPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RatPoly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = RatPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: RatPoly) -> tuple[RatPoly, RatPoly]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.deg
        lead = other.leading
        if len(rem) - 1 < db:
            return RatPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for shift in range(len(rem) - 1 - db, -1, -1):
            c = rem[shift + db] / lead
            quot[shift] = c
            if c:
                for j in range(db + 1):
                    rem[shift + j] -= c * bc[j]
        return RatPoly(quot), RatPoly(rem[:db])

    def __floordiv__(self, other) -> RatPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> RatPoly:
        return divmod(self, other)[1]

    def exact_div(self, other: RatPoly) -> RatPoly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: RatPoly) -> bool:
        return (other % self).is_zero()

    # transformations

    def scale(self, c) -> RatPoly:
        c = _as_fraction(c)
        return RatPoly(a * c for a in self.coeffs)

    def monic(self) -> RatPoly:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> RatPoly:
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def substitute_neg(self) -> RatPoly:
        """p(-x)."""
        return RatPoly(-c if i % 2 else c for i, c in enumerate(self.coeffs))

    def reverse(self) -> RatPoly:
        """Coefficient reversal x^d p(1/x), made monic; roots become reciprocals."""
        if self.is_zero() or self.coeffs[0] == 0:
            raise ValueError("reverse needs p(0) != 0")
        return RatPoly(reversed(self.coeffs)).monic()

    def denominator_lcm(self) -> int:
        return reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator),
                      self.coeffs, 1)

    def primitive(self) -> IntPoly:
        """Integer primitive part with positive leading coefficient."""
        if self.is_zero():
            return IntPoly(())
        m = self.denominator_lcm()
        ints = [int(c * m) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return IntPoly(i // g for i in ints)

    # display

    def __str__(self) -> str:
        return format_poly(self.coeffs, "x")

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]


def _coerce(other):
    if isinstance(other, RatPoly):
        return other
    if isinstance(other, IntPoly):
        return other.to_rat()
    if isinstance(other, (int, Fraction)):
        return RatPoly((other,))
    return NotImplemented


@dataclass(frozen=True)
class IntPoly:
    """Polynomial over the integers; the carrier for zeta factors."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable = ()):
        vals = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integer coefficient {c}")
                c = c.numerator
            vals.append(int(c))
        object.__setattr__(self, "coeffs", _strip(vals))

    @classmethod
    def from_rat(cls, p: RatPoly) -> IntPoly:
        return cls(p.coeffs)

    def to_rat(self) -> RatPoly:
        return RatPoly(self.coeffs)

    @property
    def degree(self) -> Union[int, ZeroDegree]:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> IntPoly:
        g = self.content()
        if g == 0:
            return self
        if self.coeffs[-1] < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return IntPoly(out)

    def __str__(self) -> str:
        return format_poly(self.coeffs, "x")

    def __repr__(self) -> str:
        return f"IntPoly({self})"


def rat_to_str(c: Fraction) -> str:
    c = _as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def rat_from_str(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not a rational: {s!r}")


def format_poly(coeffs: Sequence, var: str = "x", ascending: bool = False) -> str:
    """Human form, highest degree first unless ``ascending``."""
    terms = []
    order = range(len(coeffs)) if ascending else range(len(coeffs) - 1, -1, -1)
    for i in order:
        c = _as_fraction(coeffs[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = rat_to_str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{rat_to_str(mag)}{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += sign + body
    return out


# gcd and squarefree decomposition


def _int_prem_primitive(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of the pseudo-remainder of a by b (integer lists)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j in range(db + 1):
            a[shift + j] -= la * b[j]
        a = list(_strip(a))
    if not a:
        return a
    g = reduce(math.gcd, a)
    return [x // g for x in a]


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic gcd over Q, via the primitive remainder sequence over Z."""
    if p.is_zero() and q.is_zero():
        raise UndefinedGcd("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a = list(p.primitive().coeffs)
    b = list(q.primitive().coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _int_prem_primitive(a, b)
    return RatPoly(a).monic()


def squarefree_decompose(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm. Returns monic squarefree factors with multiplicities;
    the product of factor**mult equals p up to a nonzero constant."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    f = p.monic()
    if f.is_constant():
        return []
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)
        if not a.is_constant():
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: RatPoly) -> RatPoly:
    f = p.monic()
    return f.exact_div(poly_gcd(f, f.derivative()))


def is_squarefree(p: RatPoly) -> bool:
    return poly_gcd(p, p.derivative()).is_constant()
