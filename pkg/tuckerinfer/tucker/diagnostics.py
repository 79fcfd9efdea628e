from typing import List

import numpy as np
from pydantic import BaseModel, Field

from .core import TuckerFactorization
from ..errors import NumericalError
from ..tensor import unfold, matrix_two_inf


class TuckerDiagnostics(BaseModel):
    shape: List[int] = Field(description="张量形状")
    rank: List[int] = Field(description="多线性秩")
    incoherence: List[float] = Field(description="各模式相干性 d_j‖U_j‖²_{2,∞}/r_j")
    lambda_min: float = Field(description="各模式展开的最小非零奇异值")
    lambda_max: float = Field(description="各模式展开的最大奇异值")
    kappa: float = Field(description="条件数 λ_max/λ_min")
    dof: int = Field(description="自由度 r* + Σ(r_j d_j − r_j²)")


def incoherence(u: np.ndarray) -> float:
    """Inco(U) = d‖U‖²_{2,∞}/r"""
    d, r = u.shape
    return d * matrix_two_inf(u) ** 2 / r


def degrees_of_freedom(shape, rank) -> int:
    """Dof = r* + Σ r_j(d_j − r_j)，即切空间维数"""
    return int(np.prod(rank)) + sum(r * d - r * r for d, r in zip(shape, rank))


def diagnostics(f: TuckerFactorization) -> TuckerDiagnostics:
    """
    因子分解的相干性与条件数诊断。

    因子列正交，重建张量的展开 M_j(T) = U_j M_j(C) Kᵀ 与 M_j(C) 奇异值相同，
    因此在核心张量上计算奇异值。

    Args:
        f (TuckerFactorization): 因子分解。

    Returns:
        TuckerDiagnostics: 诊断结果。

    Raises:
        NumericalError: 核心张量为零，条件数无定义。
    """
    shape, rank = f.shape.dims, f.rank
    singular = [np.linalg.svd(unfold(f.core, j), compute_uv=False) for j in range(f.m)]
    top = max(float(s[0]) for s in singular)
    if top == 0.0:
        raise NumericalError("核心张量为零，条件数无定义", stage="diagnostics")
    nonzero = [s[s > 1e-12 * top] for s in singular]
    lam_min = min(float(s[-1]) for s in nonzero)
    lam_max = max(float(s[0]) for s in nonzero)
    return TuckerDiagnostics(
        shape=list(shape),
        rank=list(rank),
        incoherence=[incoherence(u) for u in f.factors],
        lambda_min=lam_min,
        lambda_max=lam_max,
        kappa=lam_max / lam_min,
        dof=degrees_of_freedom(shape, rank),
    )
