# 去偏与一步幂迭代模块
"""
本模块实现去偏估计的核心步骤：
1. observation_tensor：T̂_obv = Σ Y_i X_i
2. debias：T̂_ubs = T̂_init + (d*/n)·Σ(Y_i − ⟨T̂_init, X_i⟩)X_i
3. debias_power_iteration：在压缩矩阵 M_j(T̂_ubs ×_{k≠j} Û_{k,0}ᵀ) 上做一次幂迭代，
   输出 T̂ = T̂_ubs ×₁P_{Û₁,₁} ⋯ ×_mP_{Û_m,₁}

累加按观测顺序串行进行，结果与线程数无关。
"""
from typing import Union

import numpy as np

from ..algolib import scatter_add, gather
from ..errors import ShapeError
from ..sampling import ObservationSet
from ..tensor import as_array, unfold, multi_multiply
from ..tucker import TuckerFactorization, svd_top_r


def observation_tensor(obs: ObservationSet) -> np.ndarray:
    """观测值按位置累加得到的张量，重复位置求和"""
    size = obs.shape.size
    return scatter_add(obs.flat_indices(), obs.values, size).reshape(obs.shape.dims)


def observation_counts(obs: ObservationSet) -> np.ndarray:
    """每个位置的样本数，满足 Σ⟨T, X_i⟩X_i = counts ⊙ T"""
    size = obs.shape.size
    return scatter_add(obs.flat_indices(), np.ones(obs.n), size).reshape(obs.shape.dims)


def _dense(init: Union[TuckerFactorization, np.ndarray]) -> np.ndarray:
    return init.reconstruct() if isinstance(init, TuckerFactorization) else as_array(init)


def residuals(obs: ObservationSet, t) -> np.ndarray:
    """残差 Y_i − ⟨T, X_i⟩，按观测顺序排列"""
    x = _dense(t)
    if x.shape != obs.shape.dims:
        raise ShapeError(f"张量形状 {x.shape} 与观测形状 {obs.shape.dims} 不符")
    return obs.values - gather(x.reshape(-1), obs.flat_indices())


def debias(obs: ObservationSet, init) -> np.ndarray:
    """
    去偏张量 T̂_ubs。

    Args:
        obs (ObservationSet): 观测集合，n ≥ 1。
        init: 初始估计（TuckerFactorization 或稠密张量）。

    Returns:
        np.ndarray: T̂_ubs。
    """
    if obs.n == 0:
        raise ValueError("去偏需要至少一个观测")
    t = _dense(init)
    res = residuals(obs, t)
    scale = obs.shape.size / obs.n
    correction = scatter_add(obs.flat_indices(), res, obs.shape.size).reshape(obs.shape.dims)
    return t + scale * correction


def power_iteration(t_ubs, init: TuckerFactorization) -> TuckerFactorization:
    """
    一步幂迭代：Û_{j,1} = SVD_{r_j}(M_j(T̂_ubs ×_{k≠j} Û_{k,0}ᵀ))，核心为 T̂_ubs ×_j Û_{j,1}ᵀ。
    """
    x = as_array(t_ubs)
    factors = tuple(
        svd_top_r(unfold(multi_multiply(x, init.factors, skip=j, transpose=True), j), r)[0]
        for j, r in enumerate(init.rank)
    )
    core = multi_multiply(x, factors, transpose=True)
    return TuckerFactorization(core, factors)


def debias_power_iteration(obs: ObservationSet, init: TuckerFactorization) -> TuckerFactorization:
    """
    去偏后做一次幂迭代。

    Args:
        obs (ObservationSet): 观测集合。
        init (TuckerFactorization): 初始估计，秩即目标秩。

    Returns:
        TuckerFactorization: 估计量 T̂。

    Raises:
        ShapeError: 初始估计形状与观测不符。
    """
    if init.shape != obs.shape:
        raise ShapeError(f"初始估计形状 {init.shape.dims} 与观测形状 {obs.shape.dims} 不符")
    return power_iteration(debias(obs, init), init)
