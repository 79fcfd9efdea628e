import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from tuckerinfer.errors import NumericalError, ShapeError
from tuckerinfer.tensor import (
    DenseTensor, Shape, fold, hadamard, inner, kron_others, marginal_multiply, matrix_from_dict, matrix_to_dict,
    matrix_two_inf, multi_multiply, norms, outer, read_tensor, unfold, write_tensor
)


def test_shape_quantities():
    s = Shape((3, 4, 5))
    assert s.m == 3
    assert s.size == 60
    assert s.d_max == 5 and s.d_min == 3
    assert s.d_minus(1) == 15


@pytest.mark.parametrize("dims", [(5,), (3, 0, 2)])
def test_shape_rejects_invalid(dims):
    with pytest.raises(ShapeError):
        Shape(dims)


def test_dense_tensor_linearization_and_validation():
    t = DenseTensor(np.arange(8.0), shape=(2, 2, 2))
    assert t[0, 1, 1] == 3.0
    assert_array_equal(t.data, np.arange(8.0))
    with pytest.raises(ShapeError):
        DenseTensor(np.arange(7.0), shape=(2, 2, 2))
    with pytest.raises(NumericalError):
        DenseTensor([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError):
        t.array[0, 0, 0] = 1.0


def test_unfold_mode1_matches_indexing_formula():
    t = np.arange(1.0, 9.0).reshape(2, 2, 2)
    assert_array_equal(unfold(t, 0), [[1, 2, 3, 4], [5, 6, 7, 8]])


def test_unfold_matches_brute_force(rng):
    t = rng.standard_normal((3, 4, 5))
    for mode in range(3):
        mat = unfold(t, mode)
        others = [j for j in range(3) if j != mode]
        for idx in itertools.product(*(range(d) for d in t.shape)):
            col = 0
            for j in others:
                col = col * t.shape[j] + idx[j]
            assert mat[idx[mode], col] == t[idx]


@pytest.mark.parametrize("shape", [(1, 1, 1), (2, 3), (3, 4, 5), (5, 5, 5, 5), (2, 1, 3, 2)])
def test_fold_unfold_round_trip(shape, rng):
    t = rng.standard_normal(shape)
    for mode in range(len(shape)):
        assert_array_equal(fold(unfold(t, mode), mode, shape), t)


def test_fold_single_entry_and_mismatch():
    assert_array_equal(fold(np.array([[2.5]]), 0, (1, 1, 1)), np.full((1, 1, 1), 2.5))
    with pytest.raises(ShapeError):
        fold(np.zeros((2, 3)), 0, (2, 2, 2))
    with pytest.raises(ShapeError):
        unfold(np.zeros((2, 2, 2)), 3)


def test_marginal_multiply(rng):
    t = rng.standard_normal((3, 3, 3))
    assert_allclose(marginal_multiply(t, 1, np.eye(3)), t)
    a = rng.standard_normal((2, 3))
    out = marginal_multiply(t, 0, a)
    assert out.shape == (2, 3, 3)
    assert_allclose(out, fold(a @ unfold(t, 0), 0, (2, 3, 3)), rtol=1e-12)
    u, v, w = (rng.standard_normal(3) for _ in range(3))
    assert_allclose(marginal_multiply(outer([u, v, w]), 0, a), outer([a @ u, v, w]), atol=1e-12)
    with pytest.raises(ShapeError):
        marginal_multiply(t, 0, rng.standard_normal((2, 4)))


def test_adjoint_identity(rng):
    t = rng.standard_normal((3, 4, 5))
    a = rng.standard_normal((6, 4))
    s = rng.standard_normal((3, 6, 5))
    lhs = inner(marginal_multiply(t, 1, a), s)
    rhs = inner(t, marginal_multiply(s, 1, a.T))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_inner_and_norms(rng):
    t = rng.standard_normal((3, 4, 5))
    s = rng.standard_normal((3, 4, 5))
    assert_allclose(inner(t, t), np.linalg.norm(t) ** 2, rtol=1e-12)
    assert_allclose(inner(t, s), float(t.reshape(-1) @ s.reshape(-1)), rtol=1e-12)
    one_hot = outer([np.eye(3)[1], np.eye(4)[2], np.eye(5)[0]])
    assert inner(t, one_hot) == t[1, 2, 0]
    for mode in range(3):
        assert_allclose(np.linalg.norm(unfold(t, mode)), np.linalg.norm(t), rtol=1e-12)
    with pytest.raises(ShapeError):
        inner(t, s[:2])


def test_norms_of_zero_and_values():
    assert norms(np.zeros((2, 3))) == {"frobenius": 0.0, "l1": 0.0, "linf": 0.0}
    n = norms(np.array([[3.0, -4.0], [0.0, 0.0]]))
    assert n == {"frobenius": 5.0, "l1": 7.0, "linf": 4.0}


def test_matrix_two_inf(rng):
    assert matrix_two_inf(np.eye(2)) == 1.0
    a = rng.standard_normal((7, 3))
    expected = max(float(np.sqrt(sum(x * x for x in row))) for row in a)
    assert_allclose(matrix_two_inf(a), expected, rtol=1e-12)


def test_outer_and_hadamard(rng):
    e = [np.eye(2)[0], np.eye(3)[2], np.eye(2)[1]]
    t = outer(e)
    assert t.sum() == 1.0 and t[0, 2, 1] == 1.0
    u, v, w, x, y, z = (rng.standard_normal(4) for _ in range(6))
    assert_allclose(inner(outer([u, v, w]), outer([x, y, z])), (u @ x) * (v @ y) * (w @ z), rtol=1e-12)
    s = rng.standard_normal((2, 3))
    assert_array_equal(hadamard(s, np.ones((2, 3))), s)
    with pytest.raises(ShapeError):
        hadamard(s, np.ones((3, 2)))


def test_kronecker_unfolding_consistency(rng):
    core = rng.standard_normal((2, 3, 2))
    mats = [rng.standard_normal((4, 2)), rng.standard_normal((5, 3)), rng.standard_normal((3, 2))]
    t = multi_multiply(core, mats)
    for j in range(3):
        expected = mats[j] @ unfold(core, j) @ kron_others(mats, j).T
        assert np.linalg.norm(unfold(t, j) - expected) <= 1e-10 * np.linalg.norm(t)


def test_matrix_and_tensor_files(tmp_path, rng):
    a = rng.standard_normal((3, 2))
    payload = matrix_to_dict(a)
    assert (payload["rows"], payload["cols"]) == (3, 2)
    assert_array_equal(matrix_from_dict(payload), a)
    with pytest.raises(ShapeError):
        matrix_from_dict({"rows": 2, "cols": 2, "data": [1.0]})

    t = rng.standard_normal((2, 3, 2))
    write_tensor(tmp_path / "t.json", t)
    loaded = read_tensor(tmp_path / "t.json")
    assert loaded.shape.dims == (2, 3, 2)
    assert_array_equal(loaded.array, t)
