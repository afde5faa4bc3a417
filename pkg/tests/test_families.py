from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import necklace_count, unimodular
from reidzeta.exact import RatMatrix, RatPoly
from reidzeta.families import (ANOSOV_CUBIC, Graph, Kind, MissingHypothesis, ScaleCapExceeded,
                               abelian, anosov_witness_free32, certified_no_abelian_factor,
                               coherent_components, companion, direct_sum, direct_sum_tameness,
                               extend_degree_one, find_tame_witness, free_nilpotent,
                               free_tameness, graph_algebra, graph_tameness, heisenberg,
                               lyndon_words, random_unimodular, standard_algebra,
                               standard_factorization, witt_dimension)
from reidzeta.nilpotent import check_automorphism, graded_data, lcs_dims, validate_algebra
from reidzeta.spectral import classify
from reidzeta.survey import graph_from_mask


def P(*coeffs):
    return RatPoly(reversed(coeffs))


# free nilpotent algebras

@pytest.mark.parametrize("k, c, dims", [(2, 2, [2, 1]), (2, 3, [2, 1, 2]), (3, 2, [3, 3]),
                                        (3, 3, [3, 3, 8])])
def test_free_dims_examples(k, c, dims):
    alg, hall = free_nilpotent(k, c)
    assert hall.dims_per_degree == dims
    assert alg.dim == sum(dims)


@pytest.mark.parametrize("k, c", [(k, c) for k in range(1, 5) for c in range(1, 5)])
def test_hall_dims_match_necklace_oracle(k, c):
    alg, hall = free_nilpotent(k, c)
    assert hall.dims_per_degree[:c] + [0] * (c - len(hall.dims_per_degree)) == \
        [necklace_count(k, m) for m in range(1, c + 1)]
    assert [witt_dimension(k, m) for m in range(1, c + 1)] == \
        [necklace_count(k, m) for m in range(1, c + 1)]
    validate_algebra(alg)
    # LCS dims are the tail sums of the graded dims
    dims = [necklace_count(k, m) for m in range(1, c + 1)]
    tails = [sum(dims[i:]) for i in range(len(dims))]
    while tails and tails[-1] == 0:
        tails.pop()
    assert lcs_dims(alg) == tails + [0]


def test_heisenberg_is_free_2_2():
    free, _ = free_nilpotent(2, 2)
    assert heisenberg().brackets == free.brackets
    assert standard_algebra("heisenberg").brackets == free.brackets


def test_lyndon_words_and_factorization():
    assert lyndon_words(2, 3) == [(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1)]
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert free_nilpotent(2, 3)[1].elements == ["x1", "x2", "[x1,x2]", "[x1,[x1,x2]]",
                                                "[[x1,x2],x2]"]


def test_scale_cap(monkeypatch):
    monkeypatch.setenv("REIDZETA_SCALE_CAP", "10")
    with pytest.raises(ScaleCapExceeded):
        free_nilpotent(3, 3)
    monkeypatch.setenv("REIDZETA_SCALE_CAP", "5000")
    assert free_nilpotent(2, 2)[0].dim == 3


def test_extend_degree_one_examples():
    phi = anosov_witness_free32()
    gd = graded_data(phi)
    assert gd.graded_polys == (RatPoly(ANOSOV_CUBIC), P(1, 3, 0, -1))
    assert classify(phi.full_poly).verdict == "ANOSOV"
    heis = extend_degree_one(2, 2, RatMatrix([[2, 1], [1, 1]]))
    assert heis.matrix[2, 2] == 1
    ident = extend_degree_one(2, 3, RatMatrix.identity(2))
    assert ident.matrix == RatMatrix.identity(5)
    assert companion(ANOSOV_CUBIC).det() == -1


@given(st.sampled_from([(2, 3), (3, 2)]).flatmap(
    lambda kc: st.tuples(st.just(kc), unimodular(kc[0]))))
@settings(max_examples=100)
def test_extension_is_automorphism(args):
    (k, c), m1 = args
    phi = extend_degree_one(k, c, RatMatrix(m1))
    check_automorphism(phi.algebra, phi.matrix)


@pytest.mark.parametrize("k, c", [(2, 2), (2, 3), (3, 3)])
def test_free_negative_direction(k, c):
    # c >= k: the full characteristic polynomial has the root det(M1) = +-1
    rng = np.random.default_rng(k * 10 + c)
    for _ in range(25):
        m1 = RatMatrix(random_unimodular(k, rng))
        phi = extend_degree_one(k, c, m1)
        d = m1.det()
        assert RatPoly((-d, 1)).divides(phi.full_poly)
        assert not classify(phi.full_poly).tame


@pytest.mark.parametrize("k, c, expected", [(3, 2, True), (2, 2, False), (1, 1, False),
                                            (4, 3, True), (3, 3, False), (2, 1, True)])
def test_free_tameness(k, c, expected):
    assert free_tameness(k, c) is expected


# graphs

def test_graph_algebra_examples():
    assert graph_algebra(Graph(1)).dim == 1 and graph_algebra(Graph(1)).is_abelian()
    k2 = graph_algebra(Graph.complete(2))
    assert k2.dim == 3 and lcs_dims(k2) == [3, 1, 0]
    assert graph_algebra(Graph.path(3)).dim == 5
    validate_algebra(graph_algebra(Graph.complete(4)))


def test_graph_parse_errors():
    with pytest.raises(ValueError):
        Graph.parse("1-1")
    with pytest.raises(ValueError):
        Graph.parse("1-x")
    with pytest.raises(ValueError):
        Graph.parse("1-5", 3)
    assert Graph.parse("", 2) == Graph.edgeless(2)


def test_coherent_examples():
    k4 = coherent_components(Graph.complete(4))
    assert k4.components == ((1, 2, 3, 4),) and k4.kinds == (Kind.COMPLETE,)
    p3 = coherent_components(Graph.path(3))
    assert p3.components == ((1, 3), (2,))
    assert p3.kinds[0] is Kind.EDGELESS
    assert coherent_components(Graph.path(4)).components == ((1,), (2,), (3,), (4,))


def brute_components(g):
    """Classes of "the transposition (v w) maps the edge set onto itself", by direct relabelling."""
    def swap_ok(v, w):
        perm = {x: x for x in range(1, g.n + 1)}
        perm[v], perm[w] = w, v
        return g.relabel(perm) == g
    comps = []
    for v in range(1, g.n + 1):
        for comp in comps:
            if swap_ok(comp[0], v):
                comp.append(v)
                break
        else:
            comps.append([v])
    return sorted(tuple(c) for c in comps)


def hand_tameness(g):
    """Direct reading of the component criterion: no singletons, no complete pairs."""
    for comp in brute_components(g):
        if len(comp) == 1:
            return False
        if len(comp) == 2 and (comp[0], comp[1]) in g.edges:
            return False
    return True


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_components_exhaustive(n):
    for mask in range(2 ** (n * (n - 1) // 2)):
        g = graph_from_mask(n, mask)
        assert list(coherent_components(g).components) == brute_components(g)
        assert graph_tameness(g).tame == hand_tameness(g)


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, 2 ** (n * (n - 1) // 2) - 1), st.permutations(range(1, n + 1)))))
def test_components_equivariant(args):
    n, mask, perm = args
    g = graph_from_mask(n, mask)
    relabel = {v: perm[v - 1] for v in range(1, n + 1)}
    h = g.relabel(relabel)
    mapped = sorted(tuple(sorted(relabel[v] for v in c)) for c in coherent_components(g).components)
    assert sorted(coherent_components(h).components) == mapped
    assert graph_tameness(g).tame == graph_tameness(h).tame


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_and_edgeless(n):
    assert graph_tameness(Graph.complete(n)).tame == (n >= 3)
    assert graph_tameness(Graph.edgeless(n)).tame == (n >= 2)


def test_named_graph_verdicts():
    assert not graph_tameness(Graph.complete(2)).tame
    assert graph_tameness(Graph.complete(3)).tame
    assert not graph_tameness(Graph.path(3)).tame
    assert not graph_tameness(Graph.path(4)).tame
    assert graph_tameness(Graph.edgeless(2)).tame


def _canonical(g):
    return min(tuple(sorted(tuple(sorted((p[i - 1], p[j - 1]))) for i, j in g.edges))
               for p in permutations(range(1, g.n + 1)))


@pytest.mark.slow
def test_tame_graphs_have_witnesses():
    rng = np.random.default_rng(99)
    seen = set()
    for n in range(1, 6):
        for mask in range(2 ** (n * (n - 1) // 2)):
            g = graph_from_mask(n, mask)
            if not graph_tameness(g).tame:
                continue
            key = (n, _canonical(g))
            if key in seen:
                continue
            seen.add(key)
            phi = find_tame_witness(g, 200, rng)
            assert phi is not None, g.spec()
            report = classify(phi.full_poly)
            assert phi.integer_like and report.tame
    assert len(seen) >= 5


# direct sums

def test_direct_sum_dims_and_validity():
    s = direct_sum(heisenberg(), free_nilpotent(3, 2)[0])
    assert s.dim == 3 + 6
    validate_algebra(s)
    assert lcs_dims(s) == [9, 4, 0]


def test_direct_sum_tameness():
    h = heisenberg()
    f = free_nilpotent(3, 2)[0]
    assert certified_no_abelian_factor(h) and certified_no_abelian_factor(f)
    assert not direct_sum_tameness(free_tameness(2, 2), free_tameness(2, 2), True)
    assert direct_sum_tameness(free_tameness(3, 2), free_tameness(3, 2), True)
    with pytest.raises(MissingHypothesis):
        direct_sum_tameness(True, True, certified_no_abelian_factor(abelian(2)))


def test_free_sum_has_anosov_automorphism():
    # the block-diagonal witness on free(3,2) + free(3,2) is tame
    w = anosov_witness_free32()
    s = direct_sum(w.algebra, w.algebra)
    m = RatMatrix.block_diag(w.matrix, w.matrix)
    phi = check_automorphism(s, m)
    assert classify(phi.full_poly).anosov


def test_graph_abelian_factor_certificate():
    assert certified_no_abelian_factor(graph_algebra(Graph.complete(3)))
    assert certified_no_abelian_factor(graph_algebra(Graph.path(4)))
    assert not certified_no_abelian_factor(graph_algebra(Graph(3, [(1, 2)])))
    assert not certified_no_abelian_factor(graph_algebra(Graph.edgeless(2)))


def test_standard_algebra():
    assert standard_algebra("abelian", 2).dim == 2
    assert standard_algebra("abelian", 2).is_abelian()
    with pytest.raises(ValueError):
        standard_algebra("nope")
    z = abelian(1)
    for s in (1, -1):
        assert not classify(check_automorphism(z, RatMatrix([[s]])).full_poly).tame


def test_edges_of_small_graphs_are_independent():
    # graph algebras of K_n are free 2-step: dims n + n(n-1)/2
    for n in range(2, 6):
        alg = graph_algebra(Graph.complete(n))
        assert lcs_dims(alg) == [n + n * (n - 1) // 2, n * (n - 1) // 2, 0]
        assert len(list(combinations(range(n), 2))) == alg.dim - n
