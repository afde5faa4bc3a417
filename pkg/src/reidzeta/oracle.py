"""Brute-force twisted-conjugacy counts, used to validate the formulas elsewhere.

Nothing here calls into the spectral or zeta machinery: classes are counted
by literally merging x with z x phi(z)^-1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product
from typing import Optional, Sequence

from .exact import RatMatrix, smith_normal_form

INFINITE = math.inf


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int = 0

    def __post_init__(self):
        n = self.order
        t = self.table
        if n < 1 or len(t) != n or any(len(r) != n for r in t):
            raise GroupError("Cayley table must be order x order")
        if any(not 0 <= x < n for r in t for x in r):
            raise GroupError("Cayley table entry out of range")
        e = self.identity
        if any(t[e][x] != x or t[x][e] != x for x in range(n)):
            raise GroupError(f"element {e} is not an identity")
        for r in t:
            if sorted(r) != list(range(n)):
                raise GroupError("Cayley table rows must be permutations (inverses)")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def to_json(self) -> dict:
        return {"order": self.order, "identity": self.identity,
                "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data: dict) -> FiniteGroup:
        return cls(int(data["order"]), tuple(tuple(int(x) for x in r) for r in data["table"]),
                   int(data.get("identity", 0)))


@dataclass(frozen=True)
class FiniteEndo:
    group: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        g = self.group
        if len(self.images) != g.order or any(not 0 <= x < g.order for x in self.images):
            raise GroupError("endomorphism images must list one element per group element")
        im = self.images
        for a in range(g.order):
            for b in range(g.order):
                if im[g.mul(a, b)] != g.mul(im[a], im[b]):
                    raise GroupError(f"not a homomorphism at ({a},{b})")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def power(self, n: int) -> FiniteEndo:
        im = list(range(self.group.order))
        for _ in range(n):
            im = [self.images[x] for x in im]
        return FiniteEndo(self.group, tuple(im))


def cyclic_group(m: int) -> FiniteGroup:
    return FiniteGroup(m, tuple(tuple((a + b) % m for b in range(m)) for a in range(m)))


def _perm_group(perms: list[tuple[int, ...]]) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(len(p)))] for q in perms)
                  for p in perms)
    ident = index[tuple(range(len(perms[0])))]
    return FiniteGroup(len(perms), table, ident)


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(permutations(range(n)))
    return _perm_group(perms)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n, as permutations of the vertices."""
    rots = [tuple((i + r) % n for i in range(n)) for r in range(n)]
    refl = [tuple((r - i) % n for i in range(n)) for r in range(n)]
    return _perm_group(sorted(rots + refl))


def abelian_group(moduli: Sequence[int]) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Z/d1 x ... x Z/dr as a Cayley table, with the element tuples in index order."""
    elems = list(product(*(range(d) for d in moduli)))
    index = {e: i for i, e in enumerate(elems)}
    table = tuple(
        tuple(index[tuple((x + y) % d for x, y, d in zip(a, b, moduli))] for b in elems)
        for a in elems)
    return FiniteGroup(len(elems), table, index[tuple(0 for _ in moduli)]), elems


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.count -= 1


def _count_on_subset(g: FiniteGroup, images: Sequence[int], elements: Sequence[int]) -> int:
    pos = {x: i for i, x in enumerate(elements)}
    uf = _UnionFind(len(elements))
    inv = [g.inverse(x) for x in range(g.order)]
    for z in elements:
        right = inv[images[z]]
        for x in elements:
            y = g.mul(g.mul(z, x), right)
            uf.union(pos[x], pos[y])
    return uf.count


def twisted_classes_finite(g: FiniteGroup, phi: FiniteEndo) -> int:
    """Number of classes of x ~ z x phi(z)^-1."""
    return _count_on_subset(g, phi.images, range(g.order))


def twisted_count_lattice(a: Sequence[Sequence[int]]) -> float | int:
    """Classes of x -> Ax on Z^n: the index of (I - A)Z^n, or INFINITE."""
    n = len(a)
    ia = [[int(i == j) - int(a[i][j]) for j in range(n)] for i in range(n)]
    res = smith_normal_form(ia)
    if res.rank < n:
        return INFINITE
    return math.prod(res.diagonal)


def lattice_finite_model(a: Sequence[Sequence[int]]) -> tuple[FiniteGroup, FiniteEndo]:
    """Cokernel Z^n / (I - A)Z^n as a Cayley table with the map induced by A."""
    n = len(a)
    ia = [[int(i == j) - int(a[i][j]) for j in range(n)] for i in range(n)]
    res = smith_normal_form(ia)
    if res.rank < n:
        raise GroupError("I - A is singular; the cokernel is infinite")
    u = RatMatrix(res.left)
    uinv = u.inverse()
    induced = u @ RatMatrix(a) @ uinv
    keep = [i for i, d in enumerate(res.diagonal) if d != 1]
    moduli = [res.diagonal[i] for i in keep]
    group, elems = abelian_group(moduli)
    index = {e: i for i, e in enumerate(elems)}
    images = []
    for e in elems:
        full = [0] * n
        for slot, i in enumerate(keep):
            full[i] = e[slot]
        img = induced.apply(full)
        images.append(index[tuple(int(img[i]) % d for i, d in zip(keep, moduli))])
    return group, FiniteEndo(group, tuple(images))


def twisted_count_lattice_enumerated(a: Sequence[Sequence[int]]) -> float | int:
    if twisted_count_lattice(a) == INFINITE:
        return INFINITE
    group, endo = lattice_finite_model(a)
    return twisted_classes_finite(group, endo)


# reduction properties


@dataclass(frozen=True)
class ReductionCheck:
    ok: bool
    full_count: int
    reduced_count: int
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def stable_image(phi: FiniteEndo) -> list[int]:
    g = phi.group
    current = set(range(g.order))
    while True:
        nxt = {phi(x) for x in current}
        if nxt == current:
            return sorted(current)
        current = nxt


def check_subgroup_reduction(g: FiniteGroup, phi: FiniteEndo) -> ReductionCheck:
    """Count on G versus the count of phi restricted to the stabilised image phi^m(G)."""
    h = stable_image(phi)
    full = twisted_classes_finite(g, phi)
    reduced = _count_on_subset(g, phi.images, h)
    return ReductionCheck(full == reduced, full, reduced, f"|H| = {len(h)}")


def eventual_kernel(phi: FiniteEndo) -> list[int]:
    g = phi.group
    kernel: set[int] = set()
    power = FiniteEndo(g, tuple(range(g.order)))
    while True:
        power = FiniteEndo(g, tuple(phi(x) for x in power.images))
        k = {x for x in range(g.order) if power(x) == g.identity}
        if k == kernel:
            return sorted(k)
        kernel = k


def quotient(g: FiniteGroup, normal: Sequence[int]) -> tuple[FiniteGroup, list[int]]:
    """G/N as a Cayley table and the coset index of every element of G."""
    nset = set(normal)
    for x in range(g.order):
        xi = g.inverse(x)
        if any(g.mul(g.mul(x, n), xi) not in nset for n in nset):
            raise GroupError("subgroup is not normal")
    coset_of = [-1] * g.order
    reps = []
    for x in range(g.order):
        if coset_of[x] < 0:
            for n in nset:
                coset_of[g.mul(x, n)] = len(reps)
            reps.append(x)
    table = tuple(tuple(coset_of[g.mul(a, b)] for b in reps) for a in reps)
    return FiniteGroup(len(reps), table, coset_of[g.identity]), coset_of


def check_quotient_reduction(g: FiniteGroup, phi: FiniteEndo) -> ReductionCheck:
    """Count on G versus the induced endomorphism of G / (union of ker phi^n)."""
    n = eventual_kernel(phi)
    q, coset_of = quotient(g, n)
    reps = [None] * q.order
    for x in range(g.order):
        if reps[coset_of[x]] is None:
            reps[coset_of[x]] = x
    induced = FiniteEndo(q, tuple(coset_of[phi(r)] for r in reps))
    full = twisted_classes_finite(g, phi)
    reduced = twisted_classes_finite(q, induced)
    return ReductionCheck(full == reduced, full, reduced, f"|N| = {len(n)}")


def all_endomorphisms_cyclic(m: int) -> list[FiniteEndo]:
    g = cyclic_group(m)
    return [FiniteEndo(g, tuple((a * x) % m for x in range(m))) for a in range(m)]


def all_endomorphisms(g: FiniteGroup, limit: Optional[int] = None) -> list[FiniteEndo]:
    """Brute force over maps determined by generator images; fine for order <= 12."""
    gens = _small_generating_set(g)
    found = []
    for imgs in product(range(g.order), repeat=len(gens)):
        im = _extend_hom(g, dict(zip(gens, imgs)))
        if im is not None:
            found.append(FiniteEndo(g, tuple(im)))
            if limit and len(found) >= limit:
                break
    return found


def _small_generating_set(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {g.identity}
    for x in range(g.order):
        if x in span:
            continue
        gens.append(x)
        span = _closure(g, gens)
        if len(span) == g.order:
            break
    return gens


def _closure(g: FiniteGroup, gens: Sequence[int]) -> set[int]:
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = g.mul(x, s)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _extend_hom(g: FiniteGroup, gen_images: dict[int, int]) -> Optional[list[int]]:
    im: dict[int, int] = {g.identity: g.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for s, t in gen_images.items():
            y = g.mul(x, s)
            val = g.mul(im[x], t)
            if y in im:
                if im[y] != val:
                    return None
            else:
                im[y] = val
                frontier.append(y)
    out = [im[x] for x in range(g.order)]
    for a in range(g.order):
        for b in range(g.order):
            if out[g.mul(a, b)] != g.mul(out[a], out[b]):
                return None
    return out


__all__ = [
    "FiniteEndo", "FiniteGroup", "GroupError", "INFINITE", "ReductionCheck", "abelian_group",
    "all_endomorphisms", "all_endomorphisms_cyclic", "check_quotient_reduction",
    "check_subgroup_reduction", "cyclic_group", "dihedral_group", "eventual_kernel",
    "lattice_finite_model", "quotient", "stable_image", "symmetric_group",
    "twisted_classes_finite", "twisted_count_lattice", "twisted_count_lattice_enumerated",
]
