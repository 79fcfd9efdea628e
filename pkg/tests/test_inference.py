import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

import tuckerinfer.inference as inference
from conftest import perturbed, random_factorization
from tuckerinfer.errors import DegenerateFormError, NumericalError, ShapeError
from tuckerinfer.estimators import TangentSpace, make_independent_init
from tuckerinfer.inference import (
    InferenceContext, LinearForm, VarianceMode, alignment, confidence_interval, correlation_bound, infer,
    infer_many, joint_correlation, joint_inference, oracle_se, plugin_se_homo, read_form, s_hat_sq_hetero,
    sigma_hat_sq, write_form
)
from tuckerinfer.sampling import GroundTruthSpec, NoiseModel, ObservationSet, generate_ground_truth, sample_observations
from tuckerinfer.tucker import TuckerFactorization


Z_975 = 1.959964
Z_95 = 1.644854


@pytest.fixture
def desk_truth():
    spec = GroundTruthSpec(shape=[20, 20, 20], rank=[2, 2, 2], lambda_min=10.0 * 20 ** 0.75, seed=7)
    return generate_ground_truth(spec)


def full_rank_init(rng):
    """满秩分解，切空间为整个空间"""
    core = rng.standard_normal((2, 2, 2)) + 3.0 * np.eye(2)[:, :, None] * np.eye(2)[None, :, :]
    return TuckerFactorization(core, tuple(np.eye(2) for _ in range(3)))


def test_linear_form_merges_and_validates():
    form = LinearForm(np.array([[1, 0, 1], [0, 0, 0], [1, 0, 1]]), np.array([1.0, 2.0, 0.5]))
    assert form.support == 2
    assert_array_equal(form.indices, [[0, 0, 0], [1, 0, 1]])
    assert_allclose(form.weights, [2.0, 1.5])
    assert_allclose([form.l1, form.fro], [3.5, 2.5])
    with pytest.raises(ValueError):
        LinearForm(np.array([[0, 0, 0], [0, 0, 0]]), np.array([1.0, -1.0]))
    with pytest.raises(ShapeError):
        form.check_shape((2, 1, 1))


def test_linear_form_dense_and_coverage_family(rng):
    t = rng.standard_normal((3, 4, 2))
    form = LinearForm.sparse_sum([[0, 1, 1], [2, 3, 0]], [2.0, -1.0])
    assert_allclose(form.value(t), 2.0 * t[0, 1, 1] - t[2, 3, 0])
    dense = form.to_dense((3, 4, 2))
    assert_allclose(LinearForm.from_dense(dense).to_dense((3, 4, 2)), dense)

    cov = LinearForm.coverage_form((2, 1, 1))
    assert_allclose(cov.value(t), t[0, 0, 0] + t[0, 0, 1] - t[2, 1, 1])
    with pytest.raises(ValueError):
        LinearForm.coverage_form((0, 0, 1))


def test_linear_form_file(tmp_path):
    form = LinearForm.sparse_sum([[0, 1, 1], [2, 3, 0]], [0.1, -1.0 / 3.0])
    path = tmp_path / "form.csv"
    write_form(path, form)
    assert path.read_text().splitlines()[0] == "i1,i2,i3,w"
    loaded = read_form(path)
    assert_array_equal(loaded.indices, form.indices)
    assert_array_equal(loaded.weights, form.weights)


def test_sigma_hat_sq():
    zero = TuckerFactorization(np.zeros((1, 1, 1)), tuple(np.eye(3)[:, :1] for _ in range(3)))
    obs = ObservationSet((3, 3, 3), np.array([[0, 1, 2], [2, 2, 2], [1, 0, 0]]), np.array([1.0, -1.0, 2.0]))
    assert_allclose(sigma_hat_sq(obs, zero), 2.0)
    with pytest.raises(ValueError):
        sigma_hat_sq(ObservationSet((3, 3, 3), np.empty((0, 3)), np.empty(0)), zero)


def test_plugin_se_homo(rng):
    f = random_factorization((5, 4, 3), (2, 2, 2), rng)
    t = f.reconstruct()
    form = LinearForm.from_dense(t / np.linalg.norm(t))
    assert_allclose(plugin_se_homo(f, form, 30, 1.0), math.sqrt(60 / 30), rtol=1e-10)

    e1 = np.eye(3)[:, :1]
    rank_one = TuckerFactorization(np.ones((1, 1, 1)), (e1, e1, e1))
    assert plugin_se_homo(rank_one, LinearForm.one_hot((1, 1, 1)), 10, 1.0) == 0.0
    with pytest.raises(ValueError):
        plugin_se_homo(f, form, 30, -1.0)


def test_s_hat_sq_hetero_arithmetic(rng):
    init = full_rank_init(rng)
    t = init.reconstruct()
    cell, r, w, n = (1, 0, 1), 0.7, -2.0, 5
    obs = ObservationSet((2, 2, 2), np.tile(cell, (n, 1)), np.full(n, t[cell] + r))
    form = LinearForm.one_hot(cell, w)
    assert_allclose(s_hat_sq_hetero(obs, init, form), 8 * r * r * w * w, rtol=1e-10)

    exact = ObservationSet((2, 2, 2), np.tile(cell, (n, 1)), np.full(n, t[cell]))
    assert s_hat_sq_hetero(exact, init, form) <= 1e-24


def test_confidence_interval():
    lo, hi = confidence_interval(0.0, 1.0, 0.05)
    assert_allclose([lo, hi], [-Z_975, Z_975], atol=1e-5)
    lo, hi = confidence_interval(3.0, 2.0, 0.1)
    assert_allclose(hi - 3.0, Z_95 * 2.0, atol=1e-5)
    assert confidence_interval(1.5, 0.0, 0.05) == (1.5, 1.5)
    narrow, wide = confidence_interval(1.0, 1.0, 0.1), confidence_interval(1.0, 1.0, 0.01)
    assert wide[0] < narrow[0] and wide[1] > narrow[1]
    assert_allclose(sum(narrow) / 2, sum(wide) / 2)
    for alpha in (0.0, 1.0, 1.5):
        with pytest.raises(ValueError):
            confidence_interval(0.0, 1.0, alpha)
    with pytest.raises(ValueError):
        confidence_interval(0.0, -1.0, 0.05)


def test_test_statistic(rng):
    f = random_factorization((3, 4, 2), (2, 2, 2), rng)
    form = LinearForm.one_hot((1, 2, 0))
    value = form.value(f.reconstruct())
    assert inference.test_statistic(f, value, form, 0.5) == 0.0
    assert_allclose(inference.test_statistic(f, value - 2 * 0.5, form, 0.5), 2.0)
    with pytest.raises(NumericalError):
        inference.test_statistic(f, value, form, 0.0)


def test_joint_correlation_properties(rng):
    f = random_factorization((6, 5, 4), (2, 2, 2), rng)
    form = LinearForm.sparse_sum([[0, 1, 2], [3, 4, 0]], [1.0, -0.5])
    scaled = LinearForm(form.indices, -3.0 * form.weights)
    rho = joint_correlation(f, [form, form, scaled])
    assert rho[0, 0] == 1.0
    assert_allclose(rho[0, 1], 1.0, atol=1e-12)
    assert_allclose(rho[0, 2], -1.0, atol=1e-12)

    forms = [LinearForm.one_hot(tuple(rng.integers(0, d) for d in (6, 5, 4))) for _ in range(6)]
    rho = joint_correlation(f, forms)
    assert_allclose(rho, rho.T)
    assert np.all(np.abs(rho) <= 1.0)
    assert np.linalg.eigvalsh(rho).min() >= -1e-10

    with pytest.raises(ValueError):
        joint_correlation(f, [form])


def test_joint_correlation_degenerate_form():
    e1 = np.eye(3)[:, :1]
    rank_one = TuckerFactorization(np.ones((1, 1, 1)), (e1, e1, e1))
    forms = [LinearForm.one_hot((0, 0, 0)), LinearForm.one_hot((1, 1, 1))]
    with pytest.raises(DegenerateFormError) as info:
        joint_correlation(rank_one, forms)
    assert info.value.form_index == 1


def test_correlation_bound(desk_truth):
    first, second = LinearForm.one_hot((0, 1, 2)), LinearForm.one_hot((5, 6, 7))
    rho = joint_correlation(desk_truth, [first, second])
    assert abs(rho[0, 1]) <= correlation_bound(desk_truth, [first, second])
    assert correlation_bound(desk_truth, [first, first]) >= 1.0


def test_alignment_is_bounded(desk_truth):
    space = TangentSpace(desk_truth)
    shape = desk_truth.shape
    for index in [(0, 0, 0), (3, 7, 19), (19, 19, 19)]:
        assert alignment(space, LinearForm.one_hot(index)) <= math.sqrt(shape.size / shape.d_max) + 1e-12


def test_infer_zero_noise_perfect_init(rng):
    f = random_factorization((6, 5, 4), (2, 2, 2), rng, scale=3.0)
    t = f.reconstruct()
    obs = sample_observations(t, 80, NoiseModel.gaussian(0.0), seed=2)
    form = LinearForm.one_hot((1, 2, 3))
    res = infer(obs, f, form, truth_value=form.value(t))
    assert res.degenerate
    assert res.se == 0.0
    assert res.statistic is None
    assert_allclose([res.ci_lo, res.point, res.ci_hi], [form.value(t)] * 3, atol=1e-10)
    payload = res.to_json_dict()
    assert "statistic" not in payload
    assert payload["degenerate"] is True


def test_infer_result_fields(desk_truth):
    t = desk_truth.reconstruct()
    obs = sample_observations(t, 4000, NoiseModel.gaussian(1.0), seed=1)
    init = make_independent_init(desk_truth, 0.2, seed=1)
    form = LinearForm.sparse_sum([[0, 1, 2], [4, 5, 6]])

    homo = infer(obs, init, form, alpha=0.05, truth_value=form.value(t), debug_final_tangent=True)
    assert homo.variance_mode == VarianceMode.HOMO
    assert homo.se > 0 and homo.sigma_hat is not None and homo.s_hat is None
    assert_allclose(homo.ci_hi - homo.point, Z_975 * homo.se, atol=1e-5 * homo.se)
    assert homo.ci_lo <= homo.point <= homo.ci_hi
    assert_allclose(homo.statistic, (homo.point - form.value(t)) / homo.se)
    assert_allclose(homo.se, plugin_se_homo(init, form, obs.n, math.sqrt(sigma_hat_sq(obs, init))), rtol=1e-12)
    assert homo.proj_norm_final is not None

    hetero = infer(obs, init, form, variance_mode="hetero")
    assert hetero.s_hat is not None and hetero.sigma_hat is None
    assert hetero.statistic is None
    assert_allclose(hetero.point, homo.point)
    assert_allclose(hetero.s_hat ** 2, s_hat_sq_hetero(obs, init, form), rtol=1e-10)

    payload = homo.to_json_dict()
    assert set(payload) == {"point", "se", "statistic", "ci", "alpha", "variance_mode", "degenerate", "diagnostics"}
    assert set(payload["diagnostics"]) == {"sigma_hat", "proj_norm", "alignment", "proj_norm_final"}


def test_context_standard_errors_use_variance_helpers(desk_truth, monkeypatch):
    t = desk_truth.reconstruct()
    obs = sample_observations(t, 3000, NoiseModel.gaussian(1.0), seed=2)
    init = make_independent_init(desk_truth, 0.2, seed=2)
    form = LinearForm.sparse_sum([[1, 1, 1], [7, 2, 5]])
    calls = []

    def recorded(name):
        original = getattr(inference.core, name)

        def wrapper(*args, **kwargs):
            calls.append(name)
            return original(*args, **kwargs)
        return wrapper

    for name in ("sigma_hat_sq", "plugin_se_homo", "s_hat_sq_hetero"):
        monkeypatch.setattr(inference.core, name, recorded(name))

    homo = InferenceContext(obs, init, VarianceMode.HOMO).run(form)
    hetero = InferenceContext(obs, init, VarianceMode.HETERO).run(form)
    assert calls == ["sigma_hat_sq", "plugin_se_homo", "sigma_hat_sq", "s_hat_sq_hetero"]
    assert_allclose(homo.se, plugin_se_homo(init, form, obs.n, homo.sigma_hat), rtol=1e-12)
    assert_allclose(hetero.se, math.sqrt(s_hat_sq_hetero(obs, init, form) * obs.shape.size / obs.n), rtol=1e-10)


def test_infer_is_gauge_invariant(desk_truth):
    t = desk_truth.reconstruct()
    obs = sample_observations(t, 3000, NoiseModel.gaussian(1.0), seed=4)
    init = make_independent_init(desk_truth, 0.2, seed=4)
    rng = np.random.default_rng(0)
    rotations = [np.linalg.qr(rng.standard_normal((2, 2)))[0] for _ in range(3)]
    form = LinearForm.sparse_sum([[0, 1, 2], [4, 5, 6]], [1.0, -1.0])
    value = form.value(t)
    a = infer(obs, init, form, truth_value=value)
    b = infer(obs, init.with_gauge(rotations), form, truth_value=value)
    for x, y in [(a.se, b.se), (a.statistic, b.statistic), (a.ci_lo, b.ci_lo), (a.ci_hi, b.ci_hi)]:
        assert abs(x - y) <= 1e-10 * max(1.0, abs(x))


def test_infer_many_and_joint_inference(desk_truth):
    t = desk_truth.reconstruct()
    obs = sample_observations(t, 3000, NoiseModel.gaussian(1.0), seed=6)
    init = make_independent_init(desk_truth, 0.2, seed=6)
    forms = [LinearForm.one_hot((0, 1, 2)), LinearForm.sparse_sum([[3, 3, 3], [9, 9, 9]])]
    many = infer_many(obs, init, forms, truth=desk_truth)
    single = [infer(obs, init, form, truth_value=form.value(t)) for form in forms]
    for x, y in zip(many, single):
        assert_allclose([x.statistic, x.se], [y.statistic, y.se], rtol=1e-12)

    joint = joint_inference(obs, init, forms, truth=t)
    payload = joint.to_json_dict()
    assert len(payload["forms"]) == 2
    assert payload["statistics"] == [r.statistic for r in many]
    assert payload["correlation"][0][0] == 1.0
    assert_allclose(np.array(payload["correlation"]), np.array(payload["correlation"]).T)


def test_context_rejects_mismatched_inputs(rng):
    f = random_factorization((4, 4, 4), (2, 2, 2), rng)
    obs = sample_observations(np.zeros((4, 4, 5)), 10, NoiseModel.gaussian(1.0), seed=0)
    with pytest.raises(ShapeError):
        InferenceContext(obs, f)
    empty = ObservationSet((4, 4, 4), np.empty((0, 3)), np.empty(0))
    with pytest.raises(ValueError):
        InferenceContext(empty, f)


def test_oracle_se(rng):
    f = random_factorization((4, 5, 3), (2, 2, 2), rng)
    form = LinearForm.one_hot((1, 1, 1))
    proj = TangentSpace(f).norm(form.to_dense((4, 5, 3)))
    assert_allclose(oracle_se(f, form, 15, 2.0), 2.0 * proj * 2.0, rtol=1e-12)
    sd = np.full((4, 5, 3), 2.0)
    assert_allclose(oracle_se(f, form, 15, sd), oracle_se(f, form, 15, 2.0), rtol=1e-12)


def test_heteroskedastic_reduces_to_homoskedastic(desk_truth):
    t = desk_truth.reconstruct()
    obs = sample_observations(t, 100_000, NoiseModel.gaussian(1.0), seed=8)
    init = make_independent_init(desk_truth, 0.05, seed=8)
    ctx_homo = InferenceContext(obs, init, VarianceMode.HOMO)
    ctx_hetero = InferenceContext(obs, init, VarianceMode.HETERO)
    for form in [LinearForm.sparse_sum([[0, 1, 2], [4, 5, 6]]), LinearForm.one_hot((10, 3, 17))]:
        homo, hetero = ctx_homo.run(form), ctx_hetero.run(form)
        assert abs(hetero.se / homo.se - 1.0) <= 0.15


def test_perturbed_init_gives_finite_statistic(rng):
    f = random_factorization((6, 6, 6), (2, 2, 2), rng, scale=10.0)
    t = f.reconstruct()
    obs = sample_observations(t, 150, NoiseModel.gaussian(0.5), seed=3)
    res = infer(obs, perturbed(f, rng, eps=0.01), LinearForm.one_hot((0, 0, 0)), truth_value=t[0, 0, 0])
    assert math.isfinite(res.statistic)
    assert not res.degenerate
