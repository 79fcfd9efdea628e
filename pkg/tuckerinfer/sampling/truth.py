# 真值张量生成模块
"""
本模块生成模拟实验使用的低秩真值张量：
1. 因子矩阵取 d_j × r_j 标准高斯矩阵的前 r_j 个左奇异向量（相干性通常为 O(log d)）
2. 核心张量由超对角构造得到：第 k 个元素位于 (k mod r₁, …, k mod r_m)，
   取值 λ_min·min(1 + 0.1k, κ₀)；若某模式展开秩亏则改用高斯核心
3. 每个模式施加随机正交旋转，再整体缩放使各展开最小奇异值恰为 λ_min

positive 模式下第一个因子列为常向量 1/√d_j，使常数张量落在因子张成空间内，
随后通过仿射变换 a + bT 将元素移入 [floor, ceiling]，多线性秩不变。
"""
from typing import List, Optional, Tuple

import numpy as np

from .constant import Purpose
from .rng import make_rng
from .schema import GroundTruthSpec
from ..algolib import orthonormal_basis
from ..errors import NumericalError
from ..logger import LogManager
from ..tensor import unfold, multi_multiply
from ..tucker import TuckerFactorization, svd_top_r, validate_rank


SUPERDIAGONAL_STEP = 0.1
RANK_DEFICIENT_RTOL = 1e-12


def lambda_from_gamma(d: int, gamma: float, coeff: float = 10.0) -> float:
    """信号强度 λ_min = c·d^γ"""
    return float(coeff) * float(d) ** float(gamma)


def random_orthonormal(d: int, r: int, rng: np.random.Generator, constant_first: bool = False) -> np.ndarray:
    """
    随机正交列矩阵。

    Args:
        d (int): 行数。
        r (int): 列数。
        rng (np.random.Generator): 随机数流。
        constant_first (bool, optional): 为 True 时第一列固定为 1/√d。

    Returns:
        np.ndarray: d × r 正交列矩阵。
    """
    g = rng.standard_normal((d, r))
    if not constant_first:
        return svd_top_r(g, r)[0]
    g[:, 0] = 1.0
    q = orthonormal_basis(g)
    return q * np.where(q[0] < 0.0, -1.0, 1.0)


def _min_unfolding_sv(core: np.ndarray) -> List[float]:
    return [float(np.linalg.svd(unfold(core, j), compute_uv=False)[-1]) for j in range(core.ndim)]


def superdiagonal_core(rank: Tuple[int, ...], lambda_min: float, kappa_cap: float = 10.0) -> np.ndarray:
    """超对角核心，元素 λ_min·min(1 + 0.1k, κ₀)，k < max r_j"""
    core = np.zeros(rank)
    for k in range(max(rank)):
        core[tuple(k % r for r in rank)] = lambda_min * min(1.0 + SUPERDIAGONAL_STEP * k, kappa_cap)
    return core


def _build_core(rank: Tuple[int, ...], lambda_min: float, kappa_cap: float, rng: np.random.Generator) -> np.ndarray:
    core = superdiagonal_core(rank, lambda_min, kappa_cap)
    top = float(np.abs(core).max())
    if min(_min_unfolding_sv(core)) <= RANK_DEFICIENT_RTOL * top:
        LogManager.get_instance().DEBUG(f"超对角核心在秩 {rank} 下展开秩亏，改用高斯核心")
        core = rng.standard_normal(rank)
    rotations = [random_orthonormal(r, r, rng) for r in rank]
    core = multi_multiply(core, rotations)
    smallest = min(_min_unfolding_sv(core))
    if smallest <= 0.0:
        raise NumericalError("核心张量展开秩亏，无法达到目标 λ_min", stage="truth")
    return core * (lambda_min / smallest)


def shift_into_range(f: TuckerFactorization, floor: float, ceiling: Optional[float] = None) -> TuckerFactorization:
    """
    对第一列为常向量的分解做仿射变换 a + bT，使元素落在 [floor, ceiling] 内。

    常数张量 a·1 = a·√d*·(e₀ ×₁U₁ ⋯ ×_mU_m)，因此只需修改核心 (0, …, 0) 元素。
    """
    t = f.reconstruct()
    low, high = float(t.min()), float(t.max())
    scale = 1.0
    if ceiling is not None and high > low:
        scale = min(1.0, (ceiling - floor) / (high - low))
    shift = floor - scale * low
    core = np.array(f.core) * scale
    core[(0,) * f.m] += shift * np.sqrt(float(f.shape.size))
    return TuckerFactorization(core, f.factors)


def generate_ground_truth(spec: GroundTruthSpec, trial: int = 0) -> TuckerFactorization:
    """
    生成真值 Tucker 分解，给定 (spec, trial) 时结果按位确定。

    Args:
        spec (GroundTruthSpec): 真值规格。
        trial (int, optional): 试验编号，重新抽取真值时使用。

    Returns:
        TuckerFactorization: 真值分解。

    Raises:
        ShapeError: 秩超出维度范围。
    """
    rank = validate_rank(spec.rank, spec.shape)
    rng = make_rng(spec.seed, trial, Purpose.TRUTH)
    factors = tuple(random_orthonormal(d, r, rng, constant_first=spec.positive) for d, r in zip(spec.shape, rank))
    core = _build_core(rank, spec.lambda_min, spec.kappa_cap, rng)
    f = TuckerFactorization(core, factors)
    if spec.positive:
        f = shift_into_range(f, spec.floor, spec.ceiling)
    return f
