# 初始化模块
"""
本模块提供三种初值：
1. diag_deletion_init：对观测张量各模式 Gram 矩阵去掉对角线后做谱分解
2. make_independent_init：真值加独立高斯扰动后截断，与观测独立
3. split_sample_init：样本拆分，用一半观测构造初值，另一半留给去偏步骤
"""
from typing import Sequence, Tuple

import numpy as np

from .debias import observation_tensor
from .rgd import rgd_offline
from .schema import EstimatorConfig
from ..algolib import eigh_sorted, sign_convention
from ..errors import NumericalError
from ..logger import LogManager
from ..sampling import ObservationSet, Purpose, make_rng
from ..tensor import unfold
from ..tucker import TuckerFactorization, hosvd, validate_rank, project_multilinear


def offdiag_subspace(mat: np.ndarray, r: int) -> np.ndarray:
    """
    矩阵 Gram 矩阵去对角后按特征值绝对值取前 r 个特征向量。

    Args:
        mat (np.ndarray): 模式展开矩阵 M_j(T̂_obv)。
        r (int): 子空间维数。

    Returns:
        np.ndarray: d_j × r 正交列矩阵。
    """
    gram = mat @ mat.T
    if not np.all(np.isfinite(gram)):
        raise NumericalError("观测张量 Gram 矩阵含有非有限值", stage="diag_deletion")
    np.fill_diagonal(gram, 0.0)
    w, v = eigh_sorted(gram)
    order = np.argsort(-np.abs(w), kind="stable")[:r]
    u = v[:, order]
    return np.ascontiguousarray(u * sign_convention(u))


def diag_deletion_init(obs: ObservationSet, rank: Sequence[int]) -> TuckerFactorization:
    """
    去对角谱初始化：Û_j 取 P_off-diag(M_j(T̂_obv)M_jᵀ(T̂_obv)) 的前 r_j 个特征向量，
    再对 (d*/n)·T̂_obv ×_j P_{Û_j} 做 HOSVD。

    Args:
        obs (ObservationSet): 观测集合，n ≥ 1。
        rank (Sequence[int]): 多线性秩。

    Returns:
        TuckerFactorization: 初始估计。
    """
    rank = validate_rank(rank, obs.shape)
    if obs.n == 0:
        raise ValueError("去对角初始化需要至少一个观测")
    t_obv = observation_tensor(obs) * (obs.shape.size / obs.n)
    factors = [offdiag_subspace(unfold(t_obv, j), r) for j, r in enumerate(rank)]
    return hosvd(project_multilinear(t_obv, factors), rank)


def make_independent_init(truth: TuckerFactorization, target_linf: float, seed: int,
                          trial: int = 0) -> TuckerFactorization:
    """
    与观测独立的初值：HOSVD_r(T + E)，E 为高斯张量并缩放到 ‖E‖_ℓ∞ = target_linf。

    Args:
        truth (TuckerFactorization): 真值。
        target_linf (float): 扰动的 ℓ∞ 范数，≥ 0。
        seed (int): 随机种子（使用 "init" 流）。
        trial (int, optional): 试验编号。
    """
    if target_linf < 0:
        raise ValueError(f"扰动幅度须非负，实际为 {target_linf}")
    t = truth.reconstruct()
    if target_linf > 0:
        e = make_rng(seed, trial, Purpose.INIT).standard_normal(t.shape)
        t = t + e * (target_linf / np.abs(e).max())
    return hosvd(t, truth.rank)


def split_sample_init(obs: ObservationSet, cfg: EstimatorConfig, fraction: float = 0.5, seed: int = 0,
                      trial: int = 0, truth=None) -> Tuple[TuckerFactorization, ObservationSet]:
    """
    样本拆分初始化：在前一部分观测上做去对角初始化与离线梯度下降，
    返回初值与留出的观测，使去偏步骤使用与初值独立的数据。

    Args:
        obs (ObservationSet): 全部观测。
        cfg (EstimatorConfig): 估计量配置（使用 rank 与 rgd_steps）。
        fraction (float, optional): 用于初始化的观测比例，默认 0.5。
        seed (int, optional): 随机种子（使用 "split" 流）。
        trial (int, optional): 试验编号。

    Returns:
        Tuple[TuckerFactorization, ObservationSet]: 初值与留出观测。
    """
    first, held_out = obs.split(fraction, make_rng(seed, trial, Purpose.SPLIT))
    LogManager.get_instance().DEBUG(f"样本拆分: 初始化 {first.n} 个观测，留出 {held_out.n} 个观测")
    start = diag_deletion_init(first, cfg.rank)
    init = rgd_offline(first, start, cfg, truth=truth).estimate
    return init, held_out
