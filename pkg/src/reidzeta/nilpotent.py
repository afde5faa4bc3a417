"""Rational nilpotent Lie algebras given by structure constants, their
automorphisms, and Reidemeister numbers of those automorphisms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exact import RatMatrix, RatPoly, char_poly, rat_to_str, row_echelon_basis
from .spectral import InvariantViolation, is_integer_like

INFINITE = math.inf
RValue = Union[int, Fraction, float]


class AlgebraError(ValueError):
    pass


class JacobiViolation(AlgebraError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"JacobiViolation({i + 1},{j + 1},{k + 1}): "
                         f"Jacobi identity fails on e{i + 1}, e{j + 1}, e{k + 1}")
        self.triple = (i, j, k)


class NotNilpotent(AlgebraError):
    pass


class Singular(AlgebraError):
    pass


class NotBracketPreserving(AlgebraError):
    def __init__(self, i: int, j: int):
        super().__init__(f"NotBracketPreserving({i + 1},{j + 1}): "
                         f"M[e{i + 1},e{j + 1}] != [Me{i + 1},Me{j + 1}]")
        self.pair = (i, j)


@dataclass(frozen=True, eq=False)
class NilAlgebra:
    """Lie algebra on basis e_0..e_{dim-1}.

    ``brackets`` maps (i, j) with i < j to the sparse expansion of [e_i, e_j];
    absent pairs bracket to zero. Indices are 0-based here and 1-based in JSON.
    """

    dim: int
    basis: tuple[str, ...]
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]]
    family: str = "custom"
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.basis) != self.dim:
            raise AlgebraError(f"{len(self.basis)} basis names for dimension {self.dim}")
        clean = {}
        for (i, j), vec in self.brackets.items():
            if not (0 <= i < j < self.dim):
                raise AlgebraError(f"bad bracket key ({i + 1},{j + 1}); need 1 <= i < j <= dim")
            v = {k: Fraction(c) for k, c in vec.items() if c != 0}
            if any(not 0 <= k < self.dim for k in v):
                raise AlgebraError(f"bracket ({i + 1},{j + 1}) leaves the basis")
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "brackets", clean)

    # bracket evaluation

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket(self, u: Sequence, v: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        su = [(a, c) for a, c in enumerate(u) if c]
        sv = [(b, c) for b, c in enumerate(v) if c]
        br = self.brackets
        for a, ca in su:
            for b, cb in sv:
                if a == b:
                    continue
                if a < b:
                    vec = br.get((a, b))
                    s = ca * cb
                else:
                    vec = br.get((b, a))
                    s = -ca * cb
                if vec:
                    for k, c in vec.items():
                        out[k] += s * c
        return out

    def unit(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def is_abelian(self) -> bool:
        return not self.brackets

    def tag(self) -> dict:
        return {"family": self.family, **dict(self.params)}

    # JSON

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": {
                f"{i + 1},{j + 1}": [rat_to_str(vec.get(k, 0)) for k in range(self.dim)]
                for (i, j), vec in sorted(self.brackets.items())
            },
        }
        out["metadata"] = self.tag()
        return out

    @cached_property
    def _lcs(self) -> list[list[list[Fraction]]]:
        return _lower_central_series(self)


def _lower_central_series(alg: NilAlgebra) -> list[list[list[Fraction]]]:
    n = alg.dim
    series = [[alg.unit(i) for i in range(n)]]
    while series[-1]:
        prev = series[-1]
        gens = []
        for a in range(n):
            ea = alg.unit(a)
            for v in prev:
                w = alg.bracket(ea, v)
                if any(w):
                    gens.append(w)
        nxt = row_echelon_basis(gens, n)
        if len(nxt) == len(prev):
            raise NotNilpotent(
                f"lower central series stabilises at dimension {len(prev)}")
        series.append(nxt)
    return series


def lower_central_series(alg: NilAlgebra) -> list[list[list[Fraction]]]:
    """Bases (in reduced row echelon form) of gamma_1 = L, gamma_{i+1} = [L, gamma_i], ..., 0."""
    return [list(map(list, b)) for b in alg._lcs]


def lcs_dims(alg: NilAlgebra) -> list[int]:
    return [len(b) for b in alg._lcs]


def nilpotency_class(alg: NilAlgebra) -> int:
    return len(alg._lcs) - 1


def validate_algebra(alg: NilAlgebra) -> None:
    """Raise JacobiViolation or NotNilpotent; return None when the algebra is valid."""
    def nested(x: int, y: int, z: int) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for m, c in alg.bracket_basis(x, y).items():
            for t, d in alg.bracket_basis(m, z).items():
                out[t] = out.get(t, 0) + c * d
        return out

    for i, j, k in combinations(range(alg.dim), 3):
        total: dict[int, Fraction] = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            for t, c in nested(x, y, z).items():
                total[t] = total.get(t, 0) + c
        if any(total.values()):
            raise JacobiViolation(i, j, k)
    _ = alg._lcs


# automorphisms


@dataclass(frozen=True, eq=False)
class Automorphism:
    algebra: NilAlgebra
    matrix: RatMatrix  # column j is the image of e_j

    @cached_property
    def full_poly(self) -> RatPoly:
        return char_poly(self.matrix)

    @property
    def integer_like(self) -> bool:
        return is_integer_like(self.full_poly)

    @property
    def caveats(self) -> list[str]:
        if self.integer_like:
            return []
        return ["not integer-like: induces no automorphism of any lattice; "
                "verdicts describe the rational map only"]

    def power(self, n: int) -> Automorphism:
        return Automorphism(self.algebra, self.matrix ** n)

    def inverse(self) -> Automorphism:
        return Automorphism(self.algebra, self.matrix.inverse())


def check_automorphism(alg: NilAlgebra, m: RatMatrix) -> Automorphism:
    if m.shape != (alg.dim, alg.dim):
        raise AlgebraError(f"matrix shape {m.shape} does not match dimension {alg.dim}")
    if alg.dim and m.det() == 0:
        raise Singular("matrix is singular")
    images = [m.column(j) for j in range(alg.dim)]
    for i, j in combinations(range(alg.dim), 2):
        br = alg.bracket_basis(i, j)
        lhs = m.apply([br.get(k, Fraction(0)) for k in range(alg.dim)]) if br else None
        rhs = alg.bracket(images[i], images[j])
        if lhs is None:
            if any(rhs):
                raise NotBracketPreserving(i, j)
        elif lhs != rhs:
            raise NotBracketPreserving(i, j)
    return Automorphism(alg, m)


@dataclass(frozen=True)
class GradedData:
    lcs_dims: tuple[int, ...]
    graded_polys: tuple[RatPoly, ...]
    full_poly: RatPoly
    blocks: tuple[RatMatrix, ...] = field(repr=False, default=())

    @property
    def nilpotency_class(self) -> int:
        return len(self.lcs_dims) - 1


def _reduce(v: list[Fraction], echelon: list[tuple[int, list[Fraction]]]) -> list[Fraction]:
    v = list(v)
    for piv, row in echelon:
        c = v[piv]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return v


def _add_to_echelon(v: list[Fraction], echelon: list[tuple[int, list[Fraction]]]) -> bool:
    w = _reduce(v, echelon)
    piv = next((i for i, c in enumerate(w) if c), None)
    if piv is None:
        return False
    inv = 1 / w[piv]
    w = [c * inv for c in w]
    for idx, (p, row) in enumerate(echelon):
        if row[piv]:
            f = row[piv]
            echelon[idx] = (p, [a - f * b for a, b in zip(row, w)])
    echelon.append((piv, w))
    return True


def adapted_basis(alg: NilAlgebra) -> list[list[list[Fraction]]]:
    """Per layer, vectors spanning a complement of gamma_{i+1} in gamma_i."""
    series = alg._lcs
    layers = []
    for i in range(len(series) - 1):
        ech: list[tuple[int, list[Fraction]]] = []
        for v in series[i + 1]:
            _add_to_echelon(v, ech)
        comp = [v for v in series[i] if _add_to_echelon(v, ech)]
        layers.append(comp)
    return layers


def graded_data(phi: Automorphism) -> GradedData:
    alg = phi.algebra
    layers = adapted_basis(alg)
    cols = [v for layer in layers for v in layer]
    if not cols:
        return GradedData((0,), (), RatPoly((1,)))
    p = RatMatrix.from_columns(cols)
    conj = p.inverse() @ phi.matrix @ p
    blocks, polys = [], []
    start = 0
    for layer in layers:
        idx = list(range(start, start + len(layer)))
        # gamma_i is invariant, so nothing from deeper layers maps back up
        if any(conj[r, c] for c in idx for r in range(start)):
            raise InvariantViolation("automorphism does not preserve the central series")
        blk = conj.submatrix(idx, idx)
        blocks.append(blk)
        polys.append(char_poly(blk))
        start += len(layer)
    full = phi.full_poly
    prod = RatPoly((1,))
    for q in polys:
        prod = prod * q
    if prod != full:
        raise InvariantViolation("graded characteristic polynomials do not multiply to the full one")
    return GradedData(tuple(lcs_dims(alg)), tuple(polys), full, tuple(blocks))


def _abs_int(x: Fraction) -> RValue:
    x = abs(x)
    return int(x) if x.denominator == 1 else x


def reidemeister_number(phi: Automorphism) -> RValue:
    """INFINITE when 1 is an eigenvalue; else the product of |det(I - phi_i)| over graded layers."""
    gd = graded_data(phi)
    if gd.full_poly(1) == 0:
        return INFINITE
    value = Fraction(1)
    for q in gd.graded_polys:
        value *= q(1)
    return _abs_int(value)


def reidemeister_sequence(phi: Automorphism, n_terms: int) -> list[tuple[int, RValue]]:
    """R(phi^n) for n = 1..n_terms, as |det(I - M^n)| from explicit matrix powers."""
    if n_terms < 0:
        raise ValueError("n_terms must be non-negative")
    m = phi.matrix
    ident = RatMatrix.identity(m.rows)
    out = []
    power = ident
    for n in range(1, n_terms + 1):
        power = power @ m
        d = (ident - power).det()
        out.append((n, INFINITE if d == 0 else _abs_int(d)))
    return out


def first_infinite(seq: Iterable[tuple[int, RValue]]) -> Optional[int]:
    return next((n for n, r in seq if r == INFINITE), None)


def permute_basis(alg: NilAlgebra, perm: Sequence[int]) -> NilAlgebra:
    """Relabel so that new basis vector t is old basis vector perm[t]."""
    inv = {old: new for new, old in enumerate(perm)}
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), vec in alg.brackets.items():
        a, b = inv[i], inv[j]
        sgn = 1
        if a > b:
            a, b, sgn = b, a, -1
        br[(a, b)] = {inv[k]: sgn * c for k, c in vec.items()}
    return NilAlgebra(alg.dim, tuple(alg.basis[p] for p in perm), br, alg.family, alg.params)


def permute_matrix(m: RatMatrix, perm: Sequence[int]) -> RatMatrix:
    return m.submatrix(list(perm), list(perm))


__all__ = [
    "AlgebraError", "Automorphism", "GradedData", "INFINITE", "JacobiViolation", "NilAlgebra",
    "NotBracketPreserving", "NotNilpotent", "Singular", "adapted_basis", "check_automorphism",
    "first_infinite", "graded_data", "lcs_dims", "lower_central_series", "nilpotency_class",
    "permute_basis", "permute_matrix", "reidemeister_number", "reidemeister_sequence",
    "validate_algebra",
]
