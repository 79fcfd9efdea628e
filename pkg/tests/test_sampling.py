import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from tuckerinfer.errors import NoisePreconditionError, ShapeError
from tuckerinfer.sampling import (
    GroundTruthSpec, NoiseConfig, NoiseKind, NoiseModel, ObservationSet, Purpose, full_observation,
    generate_ground_truth, heteroskedastic_field, lambda_from_gamma, make_rng, noise_from_config,
    read_observations, sample_observations, sampling_count, sd_tensor, superdiagonal_core, write_observations
)
from tuckerinfer.tensor import unfold
from tuckerinfer.tucker import diagnostics


def test_streams_are_deterministic_and_disjoint():
    a = make_rng(7, 3, Purpose.OBS).random(5)
    assert_array_equal(a, make_rng(7, 3, "obs").random(5))
    assert not np.array_equal(a, make_rng(7, 4, Purpose.OBS).random(5))
    assert not np.array_equal(a, make_rng(7, 3, Purpose.NOISE).random(5))
    with pytest.raises(ValueError):
        make_rng(-1)


def test_lambda_from_gamma():
    assert_allclose(lambda_from_gamma(100, 0.5), 100.0)
    assert_allclose(lambda_from_gamma(30, 1.25, coeff=2.0), 2.0 * 30 ** 1.25)


def test_superdiagonal_core():
    core = superdiagonal_core((2, 2, 2), 5.0, kappa_cap=1.05)
    assert core[0, 0, 0] == 5.0
    assert_allclose(core[1, 1, 1], 5.0 * 1.05)
    assert np.count_nonzero(core) == 2


@pytest.mark.parametrize("rank", [(1, 1, 1), (2, 2, 2), (3, 2, 2)])
def test_ground_truth_hits_lambda_min(rank):
    spec = GroundTruthSpec(shape=[12, 10, 9], rank=list(rank), lambda_min=40.0, seed=5)
    f = generate_ground_truth(spec)
    assert f.rank == rank
    t = f.reconstruct()
    smallest = min(np.linalg.svd(unfold(t, j), compute_uv=False)[rank[j] - 1] for j in range(3))
    assert_allclose(smallest, 40.0, rtol=1e-9)


def test_ground_truth_deterministic_and_incoherent():
    spec = GroundTruthSpec(shape=[100, 100, 100], rank=[2, 2, 2], lambda_min=10.0, seed=11)
    a, b = generate_ground_truth(spec), generate_ground_truth(spec)
    assert_array_equal(a.core, b.core)
    for u, v in zip(a.factors, b.factors):
        assert_array_equal(u, v)
    assert max(diagnostics(a).incoherence) <= 10.0
    c = generate_ground_truth(spec, trial=1)
    assert not np.array_equal(a.core, c.core)


def test_positive_truth_range():
    spec = GroundTruthSpec(shape=[6, 6, 6], rank=[2, 2, 2], lambda_min=3.0, seed=2,
                           positive=True, floor=0.1, ceiling=0.9)
    f = generate_ground_truth(spec)
    t = f.reconstruct()
    assert t.min() >= 0.1 - 1e-12
    assert t.max() <= 0.9 + 1e-12
    assert f.rank == (2, 2, 2)


def test_ground_truth_spec_validation():
    with pytest.raises(ValueError):
        GroundTruthSpec(shape=[4, 4], rank=[5, 1], lambda_min=1.0)
    with pytest.raises(ValueError):
        GroundTruthSpec(shape=[4, 4], rank=[1, 1], lambda_min=1.0, floor=1.0, ceiling=0.5)


def test_sd_tensor_per_model(rng):
    t = np.full((2, 3, 2), 0.5)
    assert_array_equal(sd_tensor(t, NoiseModel.gaussian(2.0)), np.full(t.shape, 2.0))
    assert_allclose(sd_tensor(t, NoiseModel(kind=NoiseKind.BERNOULLI)), 0.5)
    pos = rng.uniform(0.5, 2.0, (3, 3, 3))
    assert_allclose(sd_tensor(pos, NoiseModel(kind=NoiseKind.EXPONENTIAL)), pos)
    assert_allclose(sd_tensor(pos, NoiseModel(kind=NoiseKind.POISSON)), np.sqrt(pos))
    field = rng.uniform(0.75, 1.25, (3, 3, 3))
    assert_array_equal(sd_tensor(pos, NoiseModel.custom(field)), field)


def test_noise_preconditions():
    t = np.full((2, 2, 2), 0.5)
    t[1, 0, 1] = 1.5
    with pytest.raises(NoisePreconditionError) as info:
        NoiseModel(kind=NoiseKind.BERNOULLI).check(t)
    assert info.value.index == (1, 0, 1)
    with pytest.raises(NoisePreconditionError):
        sample_observations(-t, 5, NoiseModel(kind=NoiseKind.POISSON), seed=0)
    with pytest.raises(ValueError):
        NoiseModel.custom(-np.ones((2, 2)))
    with pytest.raises(ShapeError):
        NoiseModel.custom(np.ones((2, 2))).check(np.ones((3, 3)))


def test_noiseless_and_deterministic_sampling(rng):
    t = rng.standard_normal((4, 5, 3))
    obs = sample_observations(t, 200, NoiseModel.gaussian(0.0), seed=3)
    assert obs.n == 200
    assert_array_equal(obs.values, t[tuple(obs.indices.T)])

    binary = (rng.random((3, 3, 3)) < 0.5).astype(float)
    obs = sample_observations(binary, 100, NoiseModel(kind=NoiseKind.BERNOULLI), seed=3)
    assert_array_equal(obs.values, binary[tuple(obs.indices.T)])

    a = sample_observations(t, 50, NoiseModel.gaussian(1.0), seed=9, trial=2)
    b = sample_observations(t, 50, NoiseModel.gaussian(1.0), seed=9, trial=2)
    assert_array_equal(a.indices, b.indices)
    assert_array_equal(a.values, b.values)


def test_gaussian_law_of_large_numbers():
    n = 100_000
    obs = sample_observations(np.full((3, 3, 3), 2.0), n, NoiseModel.gaussian(1.0), seed=1)
    assert abs(obs.values.mean() - 2.0) <= 3.0 / np.sqrt(n)
    assert abs(obs.values.var() - 1.0) <= 0.05


@pytest.mark.parametrize("kind", [NoiseKind.BERNOULLI, NoiseKind.POISSON, NoiseKind.EXPONENTIAL])
def test_conditional_variance_law(kind, rng):
    t = rng.uniform(0.2, 0.8, (2, 2, 2))
    noise = NoiseModel(kind=kind)
    obs = sample_observations(t, 8 * 10_000, noise, seed=4)
    sd = noise.sd_tensor(t)
    for cell in np.ndindex(t.shape):
        mask = np.all(obs.indices == np.array(cell), axis=1)
        y = obs.values[mask]
        assert abs(y.mean() - t[cell]) <= 4.0 * sd[cell] / np.sqrt(y.size)
        assert abs(y.var() / sd[cell] ** 2 - 1.0) <= 0.1


def test_heteroskedastic_field_range():
    field = heteroskedastic_field((5, 6, 7), 0.75, 1.25, seed=3)
    assert field.min() >= 0.75 and field.max() <= 1.25
    model = noise_from_config(NoiseConfig(kind=NoiseKind.CUSTOM_SD), (5, 6, 7), seed=3)
    assert_array_equal(model.sd, field)
    assert noise_from_config(NoiseConfig(sigma=0.3), (5, 6, 7)).sigma == 0.3


def test_observation_set_validation_and_split(rng):
    with pytest.raises(ShapeError):
        ObservationSet((2, 2), np.array([[0, 2]]), np.array([1.0]))
    with pytest.raises(ShapeError):
        ObservationSet((2, 2), np.array([[0, 1]]), np.array([1.0, 2.0]))

    t = rng.standard_normal((3, 3, 3))
    obs = full_observation(t)
    assert obs.n == 27
    assert_array_equal(obs.flat_indices(), np.arange(27))
    first, second = obs.split(0.5, make_rng(0, 0, Purpose.SPLIT))
    assert (first.n, second.n) == (13, 14)
    assert sorted(np.concatenate([first.flat_indices(), second.flat_indices()]).tolist()) == list(range(27))
    with pytest.raises(ValueError):
        obs.split(1.0, rng)


def test_sampling_count():
    assert sampling_count((10, 10, 10), 0.05) == 50
    assert sampling_count((3, 3, 3), 0.1) == 3
    with pytest.raises(ValueError):
        sampling_count((3, 3, 3), 0.0)


def test_observation_file(tmp_path, rng):
    t = rng.standard_normal((3, 4, 2))
    obs = sample_observations(t, 30, NoiseModel.gaussian(0.5), seed=0)
    path = tmp_path / "obs.csv"
    write_observations(path, obs)
    assert path.read_text().splitlines()[0] == "i1,i2,i3,y"
    loaded = read_observations(path, shape=(3, 4, 2))
    assert_array_equal(loaded.indices, obs.indices)
    assert_array_equal(loaded.values, obs.values)

    exact = ObservationSet((3, 3), np.array([[0, 0], [1, 2], [2, 1], [0, 1]]),
                           np.array([0.1 + 0.2, 1.0 / 3.0, -2.0 / 7.0, np.nextafter(1.0, 2.0)]))
    write_observations(path, exact)
    assert read_observations(path, shape=(3, 3)).values.tobytes() == exact.values.tobytes()

    path.write_text("a,b,y\n1,1,0.5\n")
    with pytest.raises(ValueError):
        read_observations(path)
