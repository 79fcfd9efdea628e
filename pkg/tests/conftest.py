import numpy as np
import pytest

from tuckerinfer.logger import LogManager
from tuckerinfer.sampling import random_orthonormal
from tuckerinfer.tucker import TuckerFactorization


@pytest.fixture(autouse=True)
def quiet_logger():
    """每个用例使用独立的日志单例，只输出 WARNING 及以上"""
    LogManager.reset_instance()
    LogManager.get_instance({"log_level": "WARNING", "to_console": False})
    yield
    LogManager.reset_instance()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_factorization(shape, rank, rng, scale=1.0):
    """随机正交因子与高斯核心（核心各模式展开几乎必然满秩）"""
    factors = tuple(random_orthonormal(d, r, rng) for d, r in zip(shape, rank))
    core = scale * rng.standard_normal(tuple(rank))
    return TuckerFactorization(core, factors)


def perturbed(f, rng, eps=0.05):
    """同秩的邻近分解"""
    factors = []
    for u in f.factors:
        q, _ = np.linalg.qr(u + eps * rng.standard_normal(u.shape))
        factors.append(q)
    core = np.array(f.core) + eps * rng.standard_normal(f.core.shape)
    return TuckerFactorization(core, tuple(factors))


def projector_distance(u, v) -> float:
    return float(np.linalg.norm(u @ u.T - v @ v.T))


@pytest.fixture
def small_factorization(rng):
    return random_factorization((4, 4, 4), (2, 2, 2), rng)
