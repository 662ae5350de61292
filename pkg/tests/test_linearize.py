import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from quatspec.errors import RankDeficientError
from quatspec.linearize import (
    BilateralForm,
    bilateral_matrix,
    left_matrix,
    numeric_rank,
    right_matrix,
    solve_bilateral,
    sylvester_det,
    sylvester_matrix,
)
from quatspec.quat import I, J, K, ONE, Quaternion

coord = st.floats(-100, 100, allow_nan=False)
quats = st.builds(Quaternion, coord, coord, coord, coord)


@given(quats)
def test_left_right_matrices_match_products(p):
    np.testing.assert_allclose(left_matrix(p), oracles.left_mult(p), atol=1e-12)
    np.testing.assert_allclose(right_matrix(p), oracles.right_mult(p), atol=1e-12)


def test_left_matrix_of_i_first_column():
    assert left_matrix(I)[:, 0].tolist() == [0, 1, 0, 0]
    assert right_matrix(I)[:, 0].tolist() == [0, 1, 0, 0]


def test_left_and_right_commute(rng):
    p, q = rng.standard_normal((2, 4))
    np.testing.assert_allclose(left_matrix(p) @ right_matrix(q), right_matrix(q) @ left_matrix(p), atol=1e-12)


def test_stacked_matrices(rng):
    ps = rng.standard_normal((6, 4))
    mats = left_matrix(ps)
    assert mats.shape == (6, 4, 4)
    np.testing.assert_allclose(mats[3], oracles.left_mult(ps[3]), atol=1e-12)


@given(st.lists(st.tuples(quats, quats), min_size=1, max_size=4), quats)
def test_bilateral_matrix_applies_form(terms, x):
    form = BilateralForm(terms)
    np.testing.assert_allclose(bilateral_matrix(form) @ np.array(x), np.array(form(x)), rtol=1e-9, atol=1e-6)


def test_rank_three_form():
    form = BilateralForm([(K, ONE), (ONE, Quaternion(2, -1)), (Quaternion(0, 0, -2), J)])
    m = bilateral_matrix(form)
    np.testing.assert_allclose(m, oracles.bilateral(form.terms), atol=1e-14)
    assert numeric_rank(m) == 3
    with pytest.raises(RankDeficientError) as err:
        solve_bilateral(form, ONE)
    assert err.value.rank == 3


def test_solve_bilateral(rng):
    terms = [tuple(rng.standard_normal((2, 4))) for _ in range(3)]
    x = Quaternion(*rng.standard_normal(4))
    form = BilateralForm(terms)
    got = solve_bilateral(form, form(x))
    np.testing.assert_allclose(np.array(got), np.array(x), atol=1e-10)


def test_numeric_rank_thresholds():
    assert numeric_rank(np.zeros((4, 4))) == 0
    assert numeric_rank(1e-13 * np.eye(4)) == 0
    assert numeric_rank(np.diag([1, 1, 1e-12, 0])) == 2
    assert numeric_rank(np.diag([1, 1, 1e-6, 0]), atol=1e-5) == 2
    with pytest.raises(ValueError):
        numeric_rank(np.eye(4), tol=-1)


@given(quats, quats)
def test_sylvester_matrix_and_det(p, q):
    m = sylvester_matrix(p, q)
    np.testing.assert_allclose(m, oracles.bilateral([(p, ONE), (ONE, q)]), atol=1e-9)
    d = np.linalg.det(m)
    closed = sylvester_det(p, q)
    assert closed >= 0
    assert abs(d - closed) <= 1e-9 * max(abs(closed), 1.0) + 1e-9 * np.abs(m).max() ** 4
