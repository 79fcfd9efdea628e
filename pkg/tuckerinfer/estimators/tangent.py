# 切空间投影模块
"""
本模块实现固定多线性秩流形在 T = C ×₁U₁ ⋯ ×_mU_m 处的切空间正交投影：

    P_T(G) = G ×₁P_{U₁} ⋯ ×_mP_{U_m} + Σ_j C ×_{k≠j} U_k ×_j W_j
    W_j = P⊥_{U_j} M_j(G) (⊗_{k≠j} U_k) M_j†(C)

切空间维数为 r* + Σ r_j(d_j − r_j)。投影是线性、幂等、自伴的算子。
"""
from typing import List

import numpy as np

from ..algolib import pinv_cutoff
from ..errors import ShapeError
from ..tensor import as_array, unfold, multi_multiply
from ..tucker import TuckerFactorization, project_multilinear


class TangentSpace:
    """
    切空间，缓存核心张量各模式展开的伪逆，用于对多个张量重复投影。

    Args:
        f (TuckerFactorization): 切点的 Tucker 分解。

    Raises:
        NumericalError: 核心展开病态（最小奇异值低于 1e-12·最大奇异值）。
    """
    def __init__(self, f: TuckerFactorization):
        self.point = f
        self.factors = f.factors
        self.core = f.core
        self.pinvs: List[np.ndarray] = [pinv_cutoff(unfold(f.core, j), stage="tangent") for j in range(f.m)]

    @property
    def shape(self):
        return self.point.shape

    def project(self, g) -> np.ndarray:
        """切空间投影 P_T(g)"""
        x = as_array(g)
        if x.shape != self.shape.dims:
            raise ShapeError(f"投影张量形状 {x.shape} 与切点形状 {self.shape.dims} 不符")
        out = project_multilinear(x, self.factors)
        for j, u in enumerate(self.factors):
            mj = unfold(multi_multiply(x, self.factors, skip=j, transpose=True), j)
            mj = mj - u @ (u.T @ mj)
            mats = list(self.factors)
            mats[j] = mj @ self.pinvs[j]
            out += multi_multiply(self.core, mats)
        return out

    def norm(self, g) -> float:
        """‖P_T(g)‖_F"""
        return float(np.linalg.norm(self.project(g)))


def tangent_project_at(f: TuckerFactorization, g) -> np.ndarray:
    """
    在 f 的切空间上投影 g。

    Args:
        f (TuckerFactorization): 切点。
        g: 与 f 同形状的张量。

    Returns:
        np.ndarray: P_T(g)。
    """
    return TangentSpace(f).project(g)
