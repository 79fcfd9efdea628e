# 截断奇异值分解模块
"""
本模块实现基于 Gram 矩阵特征分解的截断 SVD。
主要功能包括：
1. svd_top_r：返回矩阵前 r 个左奇异向量与奇异值

展开矩阵通常为 d_j × d_{-j} 且 d_{-j} 远大于 d_j，因此总在较小一侧构造 Gram 矩阵：
行数不超过列数时分解 AAᵀ；否则分解 AᵀA，回乘 A 后做 QR 正交化（列空间不变）。
输出列按奇异值降序排列，并规范为每列绝对值最大的元素为正。
"""
import numpy as np

from ..algolib import eigh_sorted, orthonormal_basis, sign_convention
from ..errors import ShapeError, NumericalError
from ..tensor import as_array


def svd_top_r(mat, r: int):
    """
    矩阵的前 r 个左奇异向量。

    Args:
        mat: 输入矩阵。
        r (int): 截断秩，须满足 1 ≤ r ≤ min(行数, 列数)。

    Returns:
        Tuple[np.ndarray, np.ndarray]: 正交列矩阵 U（行数 × r）与降序奇异值（长度 r）。

    Raises:
        ShapeError: r 超出范围或输入不是矩阵。
        NumericalError: 输入含有非有限值。
    """
    a = as_array(mat)
    if a.ndim != 2:
        raise ShapeError(f"截断 SVD 要求矩阵输入，实际维数 {a.ndim}")
    rows, cols = a.shape
    if not 1 <= r <= min(rows, cols):
        raise ShapeError(f"截断秩 {r} 超出范围 [1, {min(rows, cols)}]")
    if not np.all(np.isfinite(a)):
        raise NumericalError("截断 SVD 输入含有非有限值", stage="svd")

    if rows <= cols:
        w, v = eigh_sorted(a @ a.T)
        u = v[:, :r]
    else:
        w, v = eigh_sorted(a.T @ a)
        u = orthonormal_basis(a @ v[:, :r])
    s = np.sqrt(np.clip(w[:r], 0.0, None))
    u = np.ascontiguousarray(u * sign_convention(u))
    return u, s
