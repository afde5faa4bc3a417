from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import unimodular
from reidzeta.exact import IntPoly, RatMatrix
from reidzeta.families import (Graph, abelian, anosov_witness_free32, extend_degree_one,
                               find_tame_witness, random_unimodular)
from reidzeta.nilpotent import check_automorphism, reidemeister_number
from reidzeta.spectral import classify, count_real_outside
from reidzeta.zeta import (NotIntegerLike, NotTame, ZetaForm, exterior_det_poly,
                           exterior_det_poly_matrix, series_exp_log_derivative, series_inverse,
                           verify_zeta, zeta_closed_form, zeta_series)

CAT = [[2, 1], [1, 1]]
A = [[0, 0, 0, -1], [1, 0, 0, 2], [0, 1, 0, 0], [0, 0, 1, 2]]
B = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]]


def on_abelian(rows):
    return check_automorphism(abelian(len(rows)), RatMatrix(rows))


def test_series_examples():
    cat = on_abelian(CAT)
    assert zeta_series(cat, 3) == [1, 1, 3, 8]
    assert zeta_series(cat, 0) == [1]
    with pytest.raises(NotTame) as exc:
        zeta_series(on_abelian([[-1]]), 4)
    assert exc.value.min_infinite_power == 2
    assert "NotTame(2)" in str(exc.value)


def test_closed_form_cat_map():
    form = zeta_closed_form(on_abelian(CAT))
    assert str(form) == "(1-z)^2 / (1-3z+z^2)"
    num, den = form.as_fraction()
    assert num == IntPoly([1, -2, 1]) and den == IntPoly([1, -3, 1])
    assert verify_zeta(on_abelian(CAT), 15)
    inv = on_abelian(CAT).inverse()
    assert zeta_closed_form(inv).as_fraction() == (num, den)


@pytest.mark.parametrize("rows", [A, B])
def test_example_matrices_verify(rows):
    check = verify_zeta(on_abelian(rows), 12)
    assert check.ok, check


def test_not_integer_like_refused():
    phi = on_abelian([[2, 0], [0, Fraction(1, 3)]])
    with pytest.raises(NotIntegerLike):
        zeta_closed_form(phi)


def test_mismatch_is_reported():
    phi = on_abelian(CAT)
    wrong = ZetaForm(((IntPoly([1, -1]), -1),), False, 1)
    check = verify_zeta(phi, 5, form=wrong)
    assert not check.ok and check.index == 2
    assert check.series_value == 3 and check.closed_value == 1


def test_series_helpers():
    # 1/(1-z) = 1 + z + z^2 + ...
    assert series_inverse([1, -1], 5) == [1] * 5
    # R = 1 for every n gives exp(-log(1-z)) = 1/(1-z)
    assert series_exp_log_derivative([1] * 6, 6) == [1] * 7


def test_exterior_routes_agree_on_examples():
    for rows in (CAT, A, B):
        phi = on_abelian(rows)
        for k in range(len(rows) + 1):
            assert exterior_det_poly(phi.full_poly, k) == exterior_det_poly_matrix(phi.matrix, k)


# randomized over family constructors

def _tame_family_automorphisms(seed, count):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        kind = rng.integers(0, 4)
        if kind == 0:
            n = int(rng.integers(2, 5))
            phi = on_abelian(random_unimodular(n, rng))
        elif kind == 1:
            phi = extend_degree_one(3, 2, RatMatrix(random_unimodular(3, rng)))
        elif kind == 2:
            phi = find_tame_witness(Graph.complete(3), 30, rng)
        else:
            phi = find_tame_witness(Graph.parse("1-2,1-3,2-3", 5), 30, rng)
        if phi is not None and phi.integer_like and classify(phi.full_poly).tame:
            out.append(phi)
    return out


@pytest.mark.parametrize("seed", range(4))
def test_verify_zeta_on_family_automorphisms(seed):
    for phi in _tame_family_automorphisms(seed, 5):
        check = verify_zeta(phi, 10)
        assert check.ok, (phi.matrix.tolist(), check)
        form = zeta_closed_form(phi)
        assert form.series(10) == zeta_closed_form(phi, method="exterior").series(10)


def test_anosov_free_witness_zeta():
    assert verify_zeta(anosov_witness_free32(), 10)


@given(unimodular(3, max_ops=8))
def test_closed_form_structure(rows):
    phi = on_abelian(rows)
    if not classify(phi.full_poly).tame:
        return
    form = zeta_closed_form(phi)
    assert len(form.factors) == 4
    for f, e in form.factors:
        assert f.coeffs[0] == 1 and e in (1, -1)
    # first coefficient of the log-derivative equals R(phi)
    assert form.series(1)[1] == reidemeister_number(phi)
    p, q = count_real_outside(phi.full_poly)
    assert form.sign_flip == (q % 2 == 1)
    assert form.outer_exponent == (-1) ** (p + q)
    roundtrip = ZetaForm.from_json(form.to_json())
    assert roundtrip == form


@given(st.lists(st.integers(2, 6), min_size=1, max_size=2), st.data())
def test_sign_flip_false_for_positive_spectrum(traces, data):
    # blocks [[t,1],[t-1,1]] have determinant 1 and trace t+1 > 2: two positive real eigenvalues
    n = 2 * len(traces)
    rows = [[0] * n for _ in range(n)]
    for b, t in enumerate(traces):
        rows[2 * b][2 * b:2 * b + 2] = [t, 1]
        rows[2 * b + 1][2 * b:2 * b + 2] = [t - 1, 1]
    u = RatMatrix(data.draw(unimodular(n, max_ops=6)))
    phi = on_abelian((u @ RatMatrix(rows) @ u.inverse()).tolist())
    assert count_real_outside(phi.full_poly)[1] == 0
    form = zeta_closed_form(phi)
    assert not form.sign_flip
    assert verify_zeta(phi, 8, form=form)


def test_json_shape():
    data = zeta_closed_form(on_abelian(CAT)).to_json()
    assert set(data) == {"outer_exponent", "sign_flip", "factors"}
    # the k = 0 factor is det(I - z) on the one-dimensional zeroth exterior power
    assert data["factors"][0] == {"poly": [1, -1], "exponent": -1}
