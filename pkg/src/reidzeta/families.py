"""Constructors for the standard families of nilpotent Lie algebras and the
family-level tameness criteria.

Free nilpotent algebras use the Lyndon basis with standard bracketing (a
Hall basis). Brackets are computed inside the truncated free associative
algebra and read back in Lyndon coordinates, which keeps Jacobi exact by
construction.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .exact import RatMatrix
from .nilpotent import Automorphism, NilAlgebra, Singular, check_automorphism
from .spectral import InvariantViolation, classify

DEFAULT_SCALE_CAP = 200


class ScaleCapExceeded(ValueError):
    pass


def scale_cap() -> int:
    raw = os.environ.get("REIDZETA_SCALE_CAP")
    return int(raw) if raw else DEFAULT_SCALE_CAP


# free Lie algebras


def lyndon_words(k: int, max_len: int) -> list[tuple[int, ...]]:
    """Lyndon words over {0..k-1} up to length max_len, ordered by (length, lex)."""
    words = []
    w = [-1]
    while w:
        w[-1] += 1
        words.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return sorted(words, key=lambda t: (len(t), t))


def _is_lyndon(w: tuple[int, ...]) -> bool:
    return all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


Tensor = dict  # word tuple -> int


def _tensor_mul(a: Tensor, b: Tensor) -> Tensor:
    out: Tensor = {}
    for u, cu in a.items():
        for v, cv in b.items():
            w = u + v
            out[w] = out.get(w, 0) + cu * cv
    return {w: c for w, c in out.items() if c}


def _tensor_bracket(a: Tensor, b: Tensor) -> Tensor:
    out = dict(_tensor_mul(a, b))
    for w, c in _tensor_mul(b, a).items():
        out[w] = out.get(w, 0) - c
    return {w: c for w, c in out.items() if c}


@dataclass(frozen=True)
class HallBasis:
    words: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    generators: int

    @property
    def dims_per_degree(self) -> list[int]:
        top = max(self.degrees, default=0)
        return [self.degrees.count(d) for d in range(1, top + 1)]

    def label(self, idx: int) -> str:
        return _bracket_label(self.words[idx])

    @property
    def elements(self) -> list[str]:
        return [self.label(i) for i in range(len(self.words))]


def _bracket_label(w: tuple[int, ...]) -> str:
    if len(w) == 1:
        return f"x{w[0] + 1}"
    u, v = standard_factorization(w)
    return f"[{_bracket_label(u)},{_bracket_label(v)}]"


@lru_cache(maxsize=32)
def _free_nilpotent(k: int, c: int) -> tuple[NilAlgebra, HallBasis]:
    words = lyndon_words(k, c)
    index = {w: i for i, w in enumerate(words)}
    poly: list[Tensor] = []
    for w in words:
        if len(w) == 1:
            poly.append({w: 1})
        else:
            u, v = standard_factorization(w)
            poly.append(_tensor_bracket(poly[index[u]], poly[index[v]]))

    def coordinates(x: Tensor) -> dict[int, Fraction]:
        x = dict(x)
        out: dict[int, Fraction] = {}
        while x:
            w = min(x)
            a = x[w]
            i = index.get(w)
            if i is None:
                raise InvariantViolation(f"leading word {w} of a Lie element is not Lyndon")
            out[i] = Fraction(a)
            for word, cw in poly[i].items():
                nv = x.get(word, 0) - a * cw
                if nv:
                    x[word] = nv
                else:
                    x.pop(word, None)
        return out

    brackets = {}
    for i, j in combinations(range(len(words)), 2):
        if len(words[i]) + len(words[j]) > c:
            continue
        vec = coordinates(_tensor_bracket(poly[i], poly[j]))
        if vec:
            brackets[(i, j)] = vec
    hall = HallBasis(tuple(words), tuple(len(w) for w in words), k)
    alg = NilAlgebra(len(words), tuple(hall.elements), brackets, "free", {"k": k, "c": c})
    return alg, hall


def free_nilpotent(k: int, c: int) -> tuple[NilAlgebra, HallBasis]:
    """Free c-step nilpotent Lie algebra on k generators over its Lyndon-Hall basis."""
    if k < 1 or c < 1:
        raise ValueError("need k >= 1 and c >= 1")
    dim = sum(witt_dimension(k, m) for m in range(1, c + 1))
    if dim > scale_cap():
        raise ScaleCapExceeded(f"free({k},{c}) has dimension {dim} > cap {scale_cap()}")
    return _free_nilpotent(k, c)


def _mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def witt_dimension(k: int, m: int) -> int:
    return sum(_mobius(d) * k ** (m // d) for d in range(1, m + 1) if m % d == 0) // m


def extend_degree_one(k: int, c: int, m1: RatMatrix) -> Automorphism:
    """The automorphism of free(k, c) that acts as ``m1`` on the generators."""
    if m1.shape != (k, k):
        raise ValueError(f"degree-one matrix must be {k}x{k}")
    if m1.det() == 0:
        raise Singular("degree-one matrix is singular")
    alg, hall = free_nilpotent(k, c)
    index = {w: i for i, w in enumerate(hall.words)}
    images: list[list[Fraction]] = []
    for w in hall.words:
        if len(w) == 1:
            col = m1.column(w[0]) + [Fraction(0)] * (alg.dim - k)
            images.append(col)
        else:
            u, v = standard_factorization(w)
            images.append(alg.bracket(images[index[u]], images[index[v]]))
    return Automorphism(alg, RatMatrix.from_columns(images))


def free_tameness(k: int, c: int) -> bool:
    return k >= 2 and c < k


def companion(coeffs: Sequence[int]) -> RatMatrix:
    """Companion matrix of the monic polynomial with the given coefficients (constant first)."""
    n = len(coeffs) - 1
    if coeffs[-1] != 1:
        raise ValueError("companion needs a monic polynomial")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -coeffs[i]
    return RatMatrix(rows)


# x^3 - 3x + 1: totally real, no modulus-one roots
ANOSOV_CUBIC = (1, -3, 0, 1)


def anosov_witness_free32() -> Automorphism:
    return extend_degree_one(3, 2, companion(ANOSOV_CUBIC))


# graphs


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset  # of (i, j) with 1 <= i < j <= n

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        clean = set()
        for e in edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge {i}-{j} outside vertices 1..{n}")
            clean.add((min(i, j), max(i, j)))
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def parse(cls, spec: str, n: Optional[int] = None) -> Graph:
        """Shorthand "1-2,2-3"; the vertex count defaults to the largest label."""
        edges = []
        for part in filter(None, (p.strip() for p in spec.split(","))):
            bits = part.split("-")
            if len(bits) != 2 or not all(b.strip().isdigit() for b in bits):
                raise ValueError(f"malformed edge {part!r}; expected 'i-j'")
            edges.append((int(bits[0]), int(bits[1])))
        top = max((max(e) for e in edges), default=1)
        return cls(n if n is not None else top, edges)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, combinations(range(1, n + 1), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def edgeless(cls, n: int) -> Graph:
        return cls(n, ())

    def neighbours(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm: dict[int, int]) -> Graph:
        return Graph(self.n, [(perm[i], perm[j]) for i, j in self.edges])

    def spec(self) -> str:
        return ",".join(f"{i}-{j}" for i, j in self.sorted_edges())

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}


def graph_algebra(g: Graph) -> NilAlgebra:
    """Basis: vertices v1..vn, then edges in sorted order; [v_i, v_j] = e_ij for i < j."""
    edges = g.sorted_edges()
    names = [f"v{i}" for i in range(1, g.n + 1)] + [f"e{i}_{j}" for i, j in edges]
    brackets = {(i - 1, j - 1): {g.n + t: Fraction(1)} for t, (i, j) in enumerate(edges)}
    return NilAlgebra(len(names), tuple(names), brackets, "graph",
                      {"n": g.n, "edges": [list(e) for e in edges]})


class Kind(enum.Enum):
    EDGELESS = "EDGELESS"
    COMPLETE = "COMPLETE"


@dataclass(frozen=True)
class CoherentPartition:
    components: tuple[tuple[int, ...], ...]
    kinds: tuple[Kind, ...]

    def profile(self) -> str:
        """Sorted multiset of components, e.g. "C3+E1+E2" (kind letter + size)."""
        tags = sorted(f"{k.value[0]}{len(c)}" for c, k in zip(self.components, self.kinds))
        return "+".join(tags)


def _swap_is_automorphism(g: Graph, nb: dict[int, set[int]], v: int, w: int) -> bool:
    return nb[v] - {w} == nb[w] - {v}


def coherent_components(g: Graph) -> CoherentPartition:
    nb = {v: g.neighbours(v) for v in range(1, g.n + 1)}
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, w in combinations(range(1, g.n + 1), 2):
        if _swap_is_automorphism(g, nb, v, w):
            parent[find(v)] = find(w)
    groups: dict[int, list[int]] = {}
    for v in range(1, g.n + 1):
        groups.setdefault(find(v), []).append(v)
    comps = sorted((tuple(sorted(c)) for c in groups.values()), key=lambda c: c[0])
    kinds = []
    for comp in comps:
        for v, w in combinations(comp, 2):
            if not _swap_is_automorphism(g, nb, v, w):
                raise InvariantViolation(f"transposition relation not transitive at {v},{w}")
        inside = sum(1 for v, w in combinations(comp, 2) if (v, w) in g.edges)
        pairs = len(comp) * (len(comp) - 1) // 2
        if inside == 0:
            kinds.append(Kind.EDGELESS)
        elif inside == pairs:
            kinds.append(Kind.COMPLETE)
        else:
            raise InvariantViolation(f"component {comp} is neither edgeless nor complete")
    return CoherentPartition(tuple(comps), tuple(kinds))


def component_admits_tame(size: int, kind: Kind) -> bool:
    # singletons give Q, complete pairs give H3(Q): both blocked
    return (kind is Kind.EDGELESS and size >= 2) or size >= 3


@dataclass(frozen=True)
class GraphTameness:
    tame: bool
    partition: CoherentPartition
    verdicts: tuple[bool, ...]


def graph_tameness(g: Graph) -> GraphTameness:
    part = coherent_components(g)
    verdicts = tuple(component_admits_tame(len(c), k)
                     for c, k in zip(part.components, part.kinds))
    return GraphTameness(all(verdicts), part, verdicts)


# direct sums and standard algebras


def direct_sum(a: NilAlgebra, b: NilAlgebra) -> NilAlgebra:
    names_a, names_b = list(a.basis), list(b.basis)
    if set(names_a) & set(names_b):
        names_a = [f"a.{s}" for s in names_a]
        names_b = [f"b.{s}" for s in names_b]
    off = a.dim
    brackets = {key: dict(vec) for key, vec in a.brackets.items()}
    for (i, j), vec in b.brackets.items():
        brackets[(i + off, j + off)] = {k + off: c for k, c in vec.items()}
    return NilAlgebra(a.dim + b.dim, tuple(names_a + names_b), brackets, "direct_sum",
                      {"summands": [a.tag(), b.tag()]})


class MissingHypothesis(ValueError):
    pass


def direct_sum_tameness(t1: bool, t2: bool, no_abelian_factor: bool) -> bool:
    """Tameness of a direct sum whose summands both lack an abelian factor."""
    if not no_abelian_factor:
        raise MissingHypothesis("direct-sum criterion needs summands without abelian factors")
    return t1 and t2


def certified_no_abelian_factor(alg: NilAlgebra) -> bool:
    """Metadata-based certificate; False means "not certified" for custom algebras."""
    if alg.family == "free":
        return alg.params.get("k", 0) >= 2 and alg.params.get("c", 0) >= 2
    if alg.family == "heisenberg":
        return True
    if alg.family == "graph":
        # the centre is the edge span plus isolated vertices, so a factor Q exists
        # exactly when some vertex is isolated
        g = Graph(alg.params["n"], alg.params["edges"])
        return all(g.neighbours(v) for v in range(1, g.n + 1))
    return False


def abelian(n: int) -> NilAlgebra:
    if n < 1:
        raise ValueError("abelian algebra needs n >= 1")
    return NilAlgebra(n, tuple(f"e{i}" for i in range(1, n + 1)), {}, "abelian", {"n": n})


def heisenberg() -> NilAlgebra:
    base, _ = free_nilpotent(2, 2)
    return NilAlgebra(3, ("x", "y", "z"), base.brackets, "heisenberg", {})


def standard_algebra(name: str, n: int = 1) -> NilAlgebra:
    if name == "abelian":
        return abelian(n)
    if name == "heisenberg":
        return heisenberg()
    raise ValueError(f"unknown standard algebra {name!r}")


# witness search


def random_unimodular(size: int, rng: np.random.Generator, steps: int = 8,
                      spread: int = 2) -> list[list[int]]:
    """Product of random elementary matrices and a random sign flip."""
    m = [[int(i == j) for j in range(size)] for i in range(size)]
    if size == 1:
        return [[int(rng.choice([-1, 1]))]]
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(size, 2, replace=False))
        f = int(rng.integers(-spread, spread + 1))
        m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    if rng.integers(0, 2):
        r = int(rng.integers(0, size))
        m[r] = [-a for a in m[r]]
    return m


def graph_automorphism(g: Graph, vertex_matrix: Sequence[Sequence[int]]) -> Automorphism:
    """Extend a linear map on the vertex span to the graph algebra (edges via brackets)."""
    alg = graph_algebra(g)
    n = g.n
    cols = []
    for v in range(n):
        cols.append([Fraction(vertex_matrix[r][v]) for r in range(n)] + [Fraction(0)] * (alg.dim - n))
    for i, j in g.sorted_edges():
        cols.append(alg.bracket(cols[i - 1], cols[j - 1]))
    return check_automorphism(alg, RatMatrix.from_columns(cols))


def find_tame_witness(g: Graph, budget: int, rng: np.random.Generator
                      ) -> Optional[Automorphism]:
    """Bounded random search over automorphisms acting blockwise on coherent components."""
    part = coherent_components(g)
    for _ in range(budget):
        vm = [[0] * g.n for _ in range(g.n)]
        for comp in part.components:
            block = random_unimodular(len(comp), rng)
            for a, va in enumerate(comp):
                for b, vb in enumerate(comp):
                    vm[va - 1][vb - 1] = block[a][b]
        phi = graph_automorphism(g, vm)
        if phi.integer_like and classify(phi.full_poly).tame:
            return phi
    return None


__all__ = [
    "ANOSOV_CUBIC", "CoherentPartition", "Graph", "GraphTameness", "HallBasis", "Kind",
    "MissingHypothesis", "ScaleCapExceeded", "abelian", "anosov_witness_free32",
    "certified_no_abelian_factor", "coherent_components", "companion",
    "component_admits_tame", "direct_sum", "direct_sum_tameness", "extend_degree_one",
    "find_tame_witness", "free_nilpotent", "free_tameness", "graph_algebra",
    "graph_automorphism", "graph_tameness", "heisenberg", "lyndon_words",
    "random_unimodular", "scale_cap", "standard_algebra", "standard_factorization",
    "witt_dimension",
]
