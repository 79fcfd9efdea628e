# Tucker 分解模块
"""
本模块定义 Tucker 分解 T = C ×₁U₁ ⋯ ×_mU_m 及其基础运算：
1. TuckerFactorization：核心张量与正交因子矩阵
2. validate_rank：多线性秩合法性检查
3. hosvd：高阶奇异值分解
4. reconstruct：由分解重建稠密张量
5. project_multilinear：多线性投影 T ×_j U_jU_jᵀ

因子矩阵存在旋转与符号的规范自由度，分解之间的比较应通过投影矩阵进行。
"""
import warnings
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .linalg import svd_top_r
from ..errors import ShapeError, SchemaError
from ..protocol import SerializeProtocol
from ..tensor import Shape, DenseTensor, as_array, unfold, multi_multiply, matrix_to_dict, matrix_from_dict


FACTORIZATION_SCHEMA_VERSION = "1.0"
ORTHONORMAL_TOL = 1e-9


def validate_rank(rank: Sequence[int], shape) -> Tuple[int, ...]:
    """
    检查多线性秩 1 ≤ r_j ≤ d_j。

    Args:
        rank (Sequence[int]): 多线性秩。
        shape: 张量形状。

    Returns:
        Tuple[int, ...]: 规范化后的秩元组。

    Raises:
        ShapeError: 阶数不符或秩越界。
    """
    dims = Shape.of(shape).dims
    rank = tuple(int(r) for r in rank)
    if len(rank) != len(dims):
        raise ShapeError(f"秩的长度 {len(rank)} 与张量阶数 {len(dims)} 不符")
    for j, (r, d) in enumerate(zip(rank, dims)):
        if not 1 <= r <= d:
            raise ShapeError(f"模式 {j + 1} 的秩 {r} 超出范围 [1, {d}]")
    total = int(np.prod(rank))
    for j, r in enumerate(rank):
        if r > total // r:
            warnings.warn(f"模式 {j + 1} 的秩 {r} 大于其余模式秩之积 {total // r}，该秩组合不可实现")
    return rank


def _readonly(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64, order="C")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TuckerFactorization(SerializeProtocol):
    """
    Tucker 分解。

    Attributes:
        core (np.ndarray): 核心张量，形状 r₁×…×r_m。
        factors (Tuple[np.ndarray, ...]): 因子矩阵 U_j，形状 d_j × r_j，列正交。

    Raises:
        ShapeError: 因子个数或形状与核心不符，或因子列不正交。
    """
    core: np.ndarray
    factors: Tuple[np.ndarray, ...]

    def __post_init__(self):
        core = _readonly(self.core)
        factors = tuple(_readonly(u) for u in self.factors)
        if core.ndim < 2 or core.ndim != len(factors):
            raise ShapeError(f"核心阶数 {core.ndim} 与因子个数 {len(factors)} 不符")
        for j, u in enumerate(factors):
            if u.ndim != 2 or u.shape[1] != core.shape[j]:
                raise ShapeError(f"模式 {j + 1} 因子形状 {u.shape} 与核心维度 {core.shape[j]} 不符")
            gram_err = np.abs(u.T @ u - np.eye(u.shape[1])).max()
            if gram_err > ORTHONORMAL_TOL:
                raise ShapeError(f"模式 {j + 1} 因子列不正交，偏差 {gram_err:.2e}")
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "factors", factors)

    @property
    def rank(self) -> Tuple[int, ...]:
        return tuple(self.core.shape)

    @property
    def shape(self) -> Shape:
        return Shape(tuple(u.shape[0] for u in self.factors))

    @property
    def m(self) -> int:
        return self.core.ndim

    def reconstruct(self) -> np.ndarray:
        return reconstruct(self)

    def with_gauge(self, rotations: Sequence[np.ndarray]) -> "TuckerFactorization":
        """
        规范变换：U_j → U_jQ_j，C → C ×_j Q_jᵀ，表示同一张量。

        Args:
            rotations (Sequence[np.ndarray]): 每个模式一个 r_j × r_j 正交矩阵。
        """
        factors = [u @ q for u, q in zip(self.factors, rotations)]
        core = multi_multiply(self.core, list(rotations), transpose=True)
        return TuckerFactorization(core, tuple(factors))

    def to_dict(self) -> dict:
        return {
            "schema_version": FACTORIZATION_SCHEMA_VERSION,
            "core": DenseTensor(self.core).to_dict(),
            "factors": [matrix_to_dict(u) for u in self.factors],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "TuckerFactorization":
        version = str(payload.get("schema_version", FACTORIZATION_SCHEMA_VERSION))
        if version.split(".")[0] != FACTORIZATION_SCHEMA_VERSION.split(".")[0]:
            raise SchemaError(f"不支持的分解文件版本 {version}", keys=["schema_version"])
        missing = [k for k in ("core", "factors") if k not in payload]
        if missing:
            raise SchemaError("分解文件缺少字段", keys=missing)
        core = DenseTensor.from_dict(payload["core"]).array
        factors = tuple(matrix_from_dict(f) for f in payload["factors"])
        return cls(core, factors)

    def serialize(self) -> dict:
        return self.to_dict()

    @classmethod
    def deserialize(cls, data: dict) -> "TuckerFactorization":
        return cls.from_dict(data)


def hosvd(t, rank: Sequence[int]) -> TuckerFactorization:
    """
    高阶奇异值分解：Û_j = SVD_{r_j}(M_j(T))，Ĉ = T ×₁Û₁ᵀ ⋯ ×_mÛ_mᵀ。

    Args:
        t: 稠密张量。
        rank (Sequence[int]): 多线性秩。

    Returns:
        TuckerFactorization: 截断分解；若 t 的多线性秩不超过 rank 则重建精确等于 t。
    """
    x = as_array(t)
    rank = validate_rank(rank, x.shape)
    factors = tuple(svd_top_r(unfold(x, j), r)[0] for j, r in enumerate(rank))
    core = multi_multiply(x, factors, transpose=True)
    return TuckerFactorization(core, factors)


def reconstruct(f: TuckerFactorization) -> np.ndarray:
    """依次做模式乘积 C ×₁U₁ ⋯ ×_mU_m"""
    return multi_multiply(f.core, f.factors)


def project_multilinear(t, factors: Sequence[np.ndarray]) -> np.ndarray:
    """
    多线性投影 T ×₁P_{U₁} ⋯ ×_mP_{U_m}，通过先压缩再展开计算。

    Args:
        t: 稠密张量。
        factors (Sequence[np.ndarray]): 每个模式一个列正交矩阵，行数为 d_j。

    Returns:
        np.ndarray: 投影后的张量。
    """
    x = as_array(t)
    if len(factors) != x.ndim:
        raise ShapeError(f"因子个数 {len(factors)} 与张量阶数 {x.ndim} 不符")
    for j, u in enumerate(factors):
        if u.shape[0] != x.shape[j]:
            raise ShapeError(f"模式 {j + 1} 因子行数 {u.shape[0]} 与维度 {x.shape[j]} 不符")
    return multi_multiply(multi_multiply(x, factors, transpose=True), factors)
