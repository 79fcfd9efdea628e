# 联合推断模块
"""
本模块计算多个线性型统计量的渐近相关系数
ρ(I₁, I₂) = ⟨P_T(I₁), P_T(I₂)⟩ / (‖P_T(I₁)‖_F‖P_T(I₂)‖_F)
及其由相干性与对齐参数给出的上界：

|ρ| ≤ 2μ^m r*‖I₁‖₁‖I₂‖₁ / (d̄α²‖I₁‖_F‖I₂‖_F)
    + d*Σ_j|⟨M_j(I₁)ᵀM_j(I₂), P_{H_j}⟩| / (d̄α²‖I₁‖_F‖I₂‖_F)

其中 P_{H_j} 为除模式 j 外各因子投影的 Kronecker 积，
⟨M_j(I₁)ᵀM_j(I₂), P_{H_j}⟩ = ⟨I₁ ×_{k≠j} P_{U_k}, I₂⟩。
"""
import math
from typing import Sequence, Union

import numpy as np

from .forms import LinearForm
from ..errors import DegenerateFormError
from ..estimators import TangentSpace
from ..tensor import inner, multi_multiply
from ..tucker import TuckerFactorization, incoherence


def _space(point: Union[TuckerFactorization, TangentSpace]) -> TangentSpace:
    return point if isinstance(point, TangentSpace) else TangentSpace(point)


def joint_correlation(init: Union[TuckerFactorization, TangentSpace], forms: Sequence[LinearForm]) -> np.ndarray:
    """
    归一化切空间投影的 Gram 矩阵。

    Args:
        init: 初值或其切空间。
        forms (Sequence[LinearForm]): 至少两个线性型。

    Returns:
        np.ndarray: 对称、单位对角、元素在 [−1, 1] 内的相关系数矩阵。

    Raises:
        DegenerateFormError: 某个线性型的切空间投影为零。
    """
    if len(forms) < 2:
        raise ValueError(f"联合推断至少需要两个线性型，实际为 {len(forms)}")
    space = _space(init)
    rows = []
    for k, form in enumerate(forms):
        p = space.project(form.to_dense(space.shape)).reshape(-1)
        norm = float(np.linalg.norm(p))
        if norm == 0.0:
            raise DegenerateFormError(k)
        rows.append(p / norm)
    basis = np.vstack(rows)
    rho = np.clip(basis @ basis.T, -1.0, 1.0)
    rho = 0.5 * (rho + rho.T)
    np.fill_diagonal(rho, 1.0)
    return rho


def alignment(space: TangentSpace, form: LinearForm) -> float:
    """对齐参数 α̂_I = ‖P_T(I)‖_F√(d*/d̄)/‖I‖_F"""
    shape = space.shape
    return space.norm(form.to_dense(shape)) * math.sqrt(shape.size / shape.d_max) / form.fro


def correlation_bound(init: Union[TuckerFactorization, TangentSpace], forms: Sequence[LinearForm]) -> float:
    """
    两个线性型相关系数的上界。

    Args:
        init: 初值或其切空间。
        forms (Sequence[LinearForm]): 恰好两个线性型。

    Returns:
        float: 上界取值；μ 取各模式相干性的最大值，α 取两个线性型对齐参数的较小者。

    Raises:
        DegenerateFormError: 对齐参数为零。
    """
    if len(forms) != 2:
        raise ValueError(f"相关系数上界针对两个线性型，实际为 {len(forms)}")
    space = _space(init)
    f = space.point
    shape = space.shape
    alphas = [alignment(space, form) for form in forms]
    for k, a in enumerate(alphas):
        if a == 0.0:
            raise DegenerateFormError(k)
    a_min = min(alphas)
    mu = max(incoherence(u) for u in f.factors)
    r_star = int(np.prod(f.rank))
    first, second = forms
    denom = shape.d_max * a_min ** 2 * first.fro * second.fro

    t1, t2 = first.to_dense(shape), second.to_dense(shape)
    projectors = [u @ u.T for u in f.factors]
    cross = sum(abs(inner(multi_multiply(t1, projectors, skip=j), t2)) for j in range(f.m))
    return (2.0 * mu ** f.m * r_star * first.l1 * second.l1 + shape.size * cross) / denom
