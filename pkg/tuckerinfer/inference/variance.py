# 方差估计模块
"""
本模块实现线性型估计量的标准误：
1. sigma_hat_sq：σ̂² = (1/n)Σ(Y_i − ⟨T̂_init, X_i⟩)²
2. plugin_se_homo：σ̂‖P_T̂(I)‖_F√(d*/n)
3. s_hat_sq_hetero：ŝ²(I) = (d*/n)Σ[(Y_i − ⟨T̂_init, X_i⟩)⟨P_T̂(I), X_i⟩]²，标准误 ŝ(I)√(d*/n)
4. oracle_se：在真值处计算的总体标准误 ‖P_T(I) ⊙ S‖_F√(d*/n)

切空间投影 P_T̂ 取在初值处。
"""
import math
from typing import Union

import numpy as np

from .forms import LinearForm
from ..algolib import gather
from ..estimators import TangentSpace, residuals
from ..sampling import ObservationSet
from ..tucker import TuckerFactorization


def _space(point: Union[TuckerFactorization, TangentSpace]) -> TangentSpace:
    return point if isinstance(point, TangentSpace) else TangentSpace(point)


def sigma_hat_sq(obs: ObservationSet, init, res: np.ndarray = None) -> float:
    """
    噪声方差估计，残差均方。res 给定时直接使用。

    Raises:
        ValueError: 观测为空。
    """
    if obs.n == 0:
        raise ValueError("噪声方差估计需要至少一个观测")
    if res is None:
        res = residuals(obs, init)
    return float(np.dot(res, res) / obs.n)


def plugin_se_homo(init: Union[TuckerFactorization, TangentSpace], form: LinearForm, obs_n: int,
                   sigma_hat: float) -> float:
    """
    同方差插入式标准误。

    Args:
        init: 初值或其切空间。
        form (LinearForm): 线性型。
        obs_n (int): 样本量。
        sigma_hat (float): σ̂，≥ 0。

    Returns:
        float: σ̂‖P_T̂(I)‖_F√(d*/n)。
    """
    if sigma_hat < 0:
        raise ValueError(f"σ̂ 须非负，实际为 {sigma_hat}")
    space = _space(init)
    proj_norm = space.norm(form.to_dense(space.shape))
    return float(sigma_hat) * proj_norm * math.sqrt(space.shape.size / obs_n)


def s_hat_sq_hetero(obs: ObservationSet, init: Union[TuckerFactorization, TangentSpace], form: LinearForm,
                    res: np.ndarray = None) -> float:
    """
    异方差方差估计 ŝ²(I)。

    Args:
        obs (ObservationSet): 观测集合。
        init: 初值或其切空间。
        form (LinearForm): 线性型。
        res (np.ndarray, optional): 预先计算的残差。
    """
    if obs.n == 0:
        raise ValueError("方差估计需要至少一个观测")
    space = _space(init)
    if res is None:
        res = residuals(obs, space.point)
    projected = space.project(form.to_dense(space.shape)).reshape(-1)
    terms = res * gather(projected, obs.flat_indices())
    return float(obs.shape.size / obs.n * np.dot(terms, terms))


def oracle_se(truth: TuckerFactorization, form: LinearForm, n: int, sd) -> float:
    """
    总体标准误 ‖P_T(I) ⊙ S‖_F√(d*/n)，P_T 取在真值处。

    Args:
        truth (TuckerFactorization): 真值。
        form (LinearForm): 线性型。
        n (int): 样本量。
        sd: 标准差张量 S，或同方差时的常数 σ。
    """
    space = TangentSpace(truth)
    projected = space.project(form.to_dense(space.shape))
    weighted = projected * np.asarray(sd, dtype=np.float64)
    return float(np.linalg.norm(weighted)) * math.sqrt(space.shape.size / n)
