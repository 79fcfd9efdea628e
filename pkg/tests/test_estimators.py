import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy.linalg import hadamard, null_space

from conftest import perturbed, random_factorization
from tuckerinfer.errors import NumericalError, ShapeError
from tuckerinfer.estimators import (
    CompletionResult, EstimatorConfig, EstimatorName, TangentSpace, complete, debias, debias_power_iteration,
    diag_deletion_init, make_independent_init, observation_counts, observation_tensor, online_update,
    relative_error, residuals, rgd_offline, rgd_online, split_sample_init, tangent_project_at
)
from tuckerinfer.estimators.rgd import observed_loss
from tuckerinfer.sampling import (
    GroundTruthSpec, NoiseModel, ObservationSet, full_observation, generate_ground_truth, sample_observations,
    sampling_count
)
from tuckerinfer.tensor import multi_multiply, outer
from tuckerinfer.tucker import TuckerFactorization, degrees_of_freedom, hosvd


def tangent_basis(f: TuckerFactorization) -> np.ndarray:
    """切空间的显式基：D ×_j U_j 与 C ×_{k≠j} U_k ×_j W_j（W_j 的列与 U_j 正交）"""
    columns = []
    rank = f.rank
    for pos in np.ndindex(rank):
        d = np.zeros(rank)
        d[pos] = 1.0
        columns.append(multi_multiply(d, f.factors).reshape(-1))
    for j, u in enumerate(f.factors):
        comp = null_space(u.T)
        for a in range(comp.shape[1]):
            for b in range(rank[j]):
                mats = list(f.factors)
                mats[j] = np.outer(comp[:, a], np.eye(rank[j])[b])
                columns.append(multi_multiply(f.core, mats).reshape(-1))
    return np.column_stack(columns)


def test_tangent_projection_matches_basis_oracle(rng):
    for _ in range(20):
        f = random_factorization((4, 4, 4), (2, 2, 2), rng)
        basis = tangent_basis(f)
        assert np.linalg.matrix_rank(basis) == degrees_of_freedom((4, 4, 4), (2, 2, 2)) == 20
        g = rng.standard_normal((4, 4, 4))
        coef, *_ = np.linalg.lstsq(basis, g.reshape(-1), rcond=None)
        oracle = (basis @ coef).reshape(g.shape)
        got = tangent_project_at(f, g)
        assert np.linalg.norm(got - oracle) <= 1e-9 * np.linalg.norm(oracle)


def test_projector_properties(rng):
    for _ in range(100):
        f = random_factorization((4, 5, 3), (2, 2, 2), rng)
        space = TangentSpace(f)
        g, h = rng.standard_normal((2, 4, 5, 3))
        pg, ph = space.project(g), space.project(h)
        assert np.linalg.norm(space.project(pg) - pg) <= 1e-10 * max(1.0, np.linalg.norm(pg))
        assert abs(np.vdot(pg, h) - np.vdot(g, ph)) <= 1e-10 * np.linalg.norm(g) * np.linalg.norm(h)
        assert np.linalg.norm(pg) <= np.linalg.norm(g) * (1.0 + 1e-12)


def test_tangent_trivial_cases(rng):
    f = random_factorization((5, 4, 3), (2, 2, 1), rng)
    t = f.reconstruct()
    assert np.linalg.norm(tangent_project_at(f, t) - t) <= 1e-10 * np.linalg.norm(t)

    e1, e2 = np.eye(3)[:, :1], np.eye(3)[1]
    rank_one = TuckerFactorization(np.ones((1, 1, 1)), (e1, e1, e1))
    assert_allclose(tangent_project_at(rank_one, outer([e2, e2, e2])), 0.0, atol=1e-15)

    with pytest.raises(ShapeError):
        tangent_project_at(f, np.zeros((5, 4, 4)))


def test_tangent_rejects_ill_conditioned_core(rng):
    core = np.zeros((2, 2, 2))
    core[0, 0, 0] = 1.0
    f = TuckerFactorization(core, tuple(np.eye(4)[:, :2] for _ in range(3)))
    with pytest.raises(NumericalError):
        TangentSpace(f)


def test_observation_tensor_accumulates():
    shape = (2, 2, 2)
    empty = ObservationSet(shape, np.empty((0, 3), dtype=np.int64), np.empty(0))
    assert_array_equal(observation_tensor(empty), np.zeros(shape))
    obs = ObservationSet(shape, np.array([[1, 0, 1], [0, 1, 1], [0, 1, 1]]), np.array([3.5, 2.0, 3.0]))
    t = observation_tensor(obs)
    assert t[1, 0, 1] == 3.5
    assert t[0, 1, 1] == 5.0
    assert t.sum() == 8.5


def test_debias_hand_summation():
    u = np.array([[0.6], [0.8]])
    init = TuckerFactorization(np.full((1, 1, 1), 1.5), (u, u, u))
    indices = np.array([[0, 0, 0], [1, 1, 0], [0, 1, 1], [1, 1, 0]])
    values = np.array([0.5, 1.1, -0.2, 0.9])
    obs = ObservationSet((2, 2, 2), indices, values)

    t0 = init.reconstruct()
    expected = t0.copy()
    for idx, y in zip(indices, values):
        expected[tuple(idx)] += (8 / 4) * (y - t0[tuple(idx)])
    assert_allclose(debias(obs, init), expected, atol=1e-14)
    assert_allclose(residuals(obs, init), values - t0[tuple(indices.T)], atol=1e-15)


def test_debias_fixed_point_and_full_observation(rng):
    f = random_factorization((5, 4, 6), (2, 2, 2), rng, scale=3.0)
    t = f.reconstruct()
    obs = sample_observations(t, 60, NoiseModel.gaussian(0.0), seed=1)
    out = debias_power_iteration(obs, f)
    assert np.linalg.norm(out.reconstruct() - t) <= 1e-10 * np.linalg.norm(t)

    full = full_observation(t + rng.standard_normal(t.shape))
    other = perturbed(f, rng, eps=0.3)
    assert_allclose(debias(full, other), observation_tensor(full), atol=1e-12)
    with pytest.raises(ShapeError):
        debias_power_iteration(full, random_factorization((5, 4, 5), (2, 2, 2), rng))


def test_debias_is_unbiased():
    rng = np.random.default_rng(3)
    f = random_factorization((5, 5, 5), (2, 2, 2), rng, scale=4.0)
    truth = f.reconstruct()
    init = perturbed(f, rng, eps=0.2)
    reps = np.stack([
        debias(sample_observations(truth, 150, NoiseModel.gaussian(0.5), seed=17, trial=k), init)
        for k in range(2000)
    ])
    mean, se = reps.mean(axis=0), reps.std(axis=0, ddof=1) / np.sqrt(reps.shape[0])
    assert np.all(np.abs(mean - truth) <= 4.0 * se)


def hadamard_truth(d=8):
    """因子取 Hadamard 列，各行范数相同，Gram 矩阵对角线为常数"""
    h = hadamard(d) / np.sqrt(d)
    core = np.zeros((2, 2, 2))
    core[0, 0, 0], core[1, 1, 1] = 3.0, 2.0
    return TuckerFactorization(core, tuple(h[:, :2] for _ in range(3)))


def test_diag_deletion_exact_under_full_observation():
    f = hadamard_truth()
    t = f.reconstruct()
    init = diag_deletion_init(full_observation(t), (2, 2, 2))
    assert relative_error(init.reconstruct(), t) <= 1e-8


def test_diag_deletion_zero_observations():
    obs = ObservationSet((4, 4, 4), np.array([[0, 1, 2], [3, 3, 0]]), np.zeros(2))
    init = diag_deletion_init(obs, (1, 1, 1))
    assert_allclose(init.reconstruct(), 0.0, atol=1e-15)
    with pytest.raises(ValueError):
        diag_deletion_init(ObservationSet((4, 4, 4), np.empty((0, 3)), np.empty(0)), (1, 1, 1))


def test_diag_deletion_desk_accuracy():
    f = hadamard_truth(32)
    t = f.reconstruct()
    errors = []
    for seed in range(5):
        obs = sample_observations(t, sampling_count(t.shape, 0.3), NoiseModel.gaussian(0.001), seed=seed)
        errors.append(relative_error(diag_deletion_init(obs, (2, 2, 2)).reconstruct(), t))
    assert np.median(errors) <= 0.2


def test_rgd_offline_fixed_point_and_zero_steps(rng):
    f = random_factorization((5, 4, 3), (2, 2, 2), rng, scale=3.0)
    t = f.reconstruct()
    full = full_observation(t)
    cfg = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=[2, 2, 2], rgd_steps=5, tolerance=0.0)
    res = rgd_offline(full, f, cfg, truth=f)
    assert isinstance(res, CompletionResult)
    assert np.linalg.norm(res.estimate.reconstruct() - t) <= 1e-10 * np.linalg.norm(t)
    assert len(res.trajectory) == res.iterations + 1

    other = perturbed(f, rng)
    zero = rgd_offline(full, other, cfg.model_copy(update={"rgd_steps": 0}))
    assert zero.estimate is other
    assert zero.iterations == 0

    with pytest.raises(ShapeError):
        rgd_offline(full, f, cfg.model_copy(update={"rank": [1, 2, 2]}))


def test_rgd_offline_early_stop(rng):
    f = random_factorization((5, 4, 3), (2, 2, 2), rng, scale=3.0)
    cfg = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=[2, 2, 2], rgd_steps=20, tolerance=1e-6)
    res = rgd_offline(full_observation(f.reconstruct()), f, cfg)
    assert res.converged
    assert res.iterations == 1


def test_rgd_offline_backtracking_decreases_loss():
    spec = GroundTruthSpec(shape=[8, 8, 8], rank=[2, 2, 2], lambda_min=30.0, seed=1)
    truth = generate_ground_truth(spec)
    t = truth.reconstruct()
    obs = sample_observations(t, sampling_count(t.shape, 0.6), NoiseModel.gaussian(0.5), seed=2)
    start = diag_deletion_init(obs, (2, 2, 2))
    counts, t_obv = observation_counts(obs), observation_tensor(obs)
    cfg = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=[2, 2, 2], tolerance=0.0)

    losses = []
    for steps in range(6):
        res = rgd_offline(obs, start, cfg.model_copy(update={"rgd_steps": steps}))
        losses.append(observed_loss(res.estimate.reconstruct(), counts, t_obv))
    assert np.all(np.diff(losses) <= 1e-9 * abs(losses[0]))

    res = rgd_offline(obs, start, cfg.model_copy(update={"rgd_steps": 20}), truth=truth)
    assert res.trajectory[-1] < res.trajectory[0]
    with pytest.raises(ValueError):
        EstimatorConfig(rank=[2, 2, 2], rgd_backtracks=-1)


def test_rgd_online_trivial_cases(rng):
    f = random_factorization((5, 4, 3), (2, 2, 2), rng, scale=3.0)
    t = f.reconstruct()
    obs = sample_observations(t, 40, NoiseModel.gaussian(0.0), seed=2)
    cfg = EstimatorConfig(name=EstimatorName.RGD_ONLINE, rank=[2, 2, 2])
    res = rgd_online(obs, f, cfg)
    assert np.linalg.norm(res.estimate.reconstruct() - t) <= 1e-10 * np.linalg.norm(t)
    assert res.iterations == 40

    other = perturbed(f, rng)
    assert online_update(other, (1, 2, 0), 5.0, 0.0) is other


def test_online_update_matches_dense_step(rng):
    f = random_factorization((5, 4, 3), (2, 2, 2), rng, scale=3.0)
    index, y, eta = (3, 1, 2), 0.7, 0.4
    t = f.reconstruct()
    grad = np.zeros(t.shape)
    grad[index] = t[index] - y
    expected = hosvd(t - eta * tangent_project_at(f, grad), f.rank).reconstruct()
    got = online_update(f, index, y, eta).reconstruct()
    assert np.linalg.norm(got - expected) <= 1e-10 * np.linalg.norm(expected)


def test_make_independent_init(rng):
    f = random_factorization((6, 5, 4), (2, 2, 2), rng, scale=3.0)
    assert_allclose(make_independent_init(f, 0.0, seed=1).reconstruct(), f.reconstruct(), atol=1e-10)

    full = TuckerFactorization(rng.standard_normal((3, 3, 3)), tuple(np.eye(3) for _ in range(3)))
    init = make_independent_init(full, 0.25, seed=4, trial=2)
    assert_allclose(np.abs(init.reconstruct() - full.reconstruct()).max(), 0.25, rtol=1e-10)
    with pytest.raises(ValueError):
        make_independent_init(f, -1.0, seed=0)


def test_make_independent_init_amplification():
    spec = GroundTruthSpec(shape=[30, 30, 30], rank=[2, 2, 2], lambda_min=100.0, seed=1)
    truth = generate_ground_truth(spec)
    t = truth.reconstruct()
    for seed in range(5):
        init = make_independent_init(truth, 0.3, seed=seed)
        assert np.abs(init.reconstruct() - t).max() <= 5 * 0.3


def test_split_sample_init(rng):
    spec = GroundTruthSpec(shape=[12, 12, 12], rank=[2, 2, 2], lambda_min=60.0, seed=3)
    t = generate_ground_truth(spec).reconstruct()
    obs = sample_observations(t, 900, NoiseModel.gaussian(0.1), seed=3)
    cfg = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=[2, 2, 2], rgd_steps=5)
    init, held_out = split_sample_init(obs, cfg, 0.5, seed=3)
    assert init.rank == (2, 2, 2)
    assert held_out.n == 450
    again, held_again = split_sample_init(obs, cfg, 0.5, seed=3)
    assert_array_equal(held_again.indices, held_out.indices)
    assert_array_equal(again.core, init.core)


@pytest.mark.parametrize("name", ["hosvd", "diag_deletion", "debias_power", "rgd_offline"])
def test_complete_noiseless_full_observation(name):
    f = hadamard_truth()
    t = f.reconstruct()
    cfg = EstimatorConfig(name=name, rank=[2, 2, 2], rgd_steps=3)
    res = complete(full_observation(t), cfg)
    assert relative_error(res.estimate.reconstruct(), t) <= 1e-8
    with pytest.raises(ValueError):
        complete(ObservationSet((8, 8, 8), np.empty((0, 3)), np.empty(0)), cfg)


def desk_problem(seed: int, p: float = 0.1, sigma: float = 0.05):
    d = 30
    spec = GroundTruthSpec(shape=[d, d, d], rank=[2, 2, 2], lambda_min=10.0 * d ** 1.25, seed=seed)
    truth = generate_ground_truth(spec)
    t = truth.reconstruct()
    obs = sample_observations(t, sampling_count(t.shape, p), NoiseModel.gaussian(sigma), seed=seed)
    return truth, obs


@pytest.mark.slow
def test_rgd_offline_desk_scale():
    errors = []
    for seed in range(20):
        truth, obs = desk_problem(seed)
        cfg = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=[2, 2, 2], rgd_steps=50)
        res = rgd_offline(obs, diag_deletion_init(obs, (2, 2, 2)), cfg, truth=truth)
        errors.append(res.trajectory[-1])
        assert np.all(np.diff(res.trajectory[3:]) <= 1e-3)
    assert np.median(errors) <= 0.01


@pytest.mark.slow
def test_rgd_online_improves_on_init():
    d = 30
    n = int(np.ceil(5 * d ** 1.5 * np.log(d) ** 2))
    gains = []
    for seed in range(20):
        spec = GroundTruthSpec(shape=[d, d, d], rank=[2, 2, 2], lambda_min=10.0 * d ** 1.25, seed=seed)
        truth = generate_ground_truth(spec)
        obs = sample_observations(truth.reconstruct(), n, NoiseModel.gaussian(1.0), seed=seed)
        start = diag_deletion_init(obs, (2, 2, 2))
        res = rgd_online(obs, start, EstimatorConfig(name=EstimatorName.RGD_ONLINE, rank=[2, 2, 2]), truth=truth)
        gains.append(res.trajectory[0] - res.trajectory[-1])
    assert np.median(gains) > 0
