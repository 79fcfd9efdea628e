# 矩阵操作模块
"""
本模块包含了用于因子矩阵的基础操作。
主要功能包括：
1. 带截断阈值的伪逆（切空间投影中的 M_j†(C)）
2. 保持列空间不变的正交化
3. 奇异向量符号规范化（最大绝对值元素为正）
4. 正交投影矩阵

切空间与推断计算全部通过投影矩阵 UUᵀ 进行，因此符号规范只影响输出的可复现性。
"""
import numpy as np

from ..errors import NumericalError


PINV_RCOND = 1e-12


def pinv_cutoff(mat: np.ndarray, rcond: float = PINV_RCOND, strict: bool = True, stage: str = "pinv"):
    """
    计算矩阵的伪逆，奇异值小于 rcond·σ_max 的方向置零。

    Args:
        mat (np.ndarray): 输入矩阵。
        rcond (float, optional): 相对截断阈值，默认 1e-12。
        strict (bool, optional): 为 True 时若存在被截断的奇异值则报错，默认 True。
        stage (str, optional): 报错时标注的计算阶段。

    Returns:
        np.ndarray: 伪逆矩阵，形状为 mat 的转置形状。

    Raises:
        NumericalError: 矩阵为零矩阵，或 strict 模式下最小奇异值低于阈值。
    """
    u, s, vt = np.linalg.svd(np.asarray(mat, dtype=np.float64), full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        raise NumericalError("伪逆输入为零矩阵", stage=stage)
    keep = s > rcond * s[0]
    if strict and not np.all(keep):
        raise NumericalError(
            f"伪逆病态: 最小奇异值 {s[-1]:.3e} 小于 {rcond:.0e}·最大奇异值 {s[0]:.3e}", stage=stage
        )
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (vt.T * inv) @ u.T


def orthonormal_basis(mat: np.ndarray) -> np.ndarray:
    """QR 正交化，返回与 mat 列空间相同（满秩时）的正交列矩阵"""
    q, _ = np.linalg.qr(np.asarray(mat, dtype=np.float64))
    return q


def sign_convention(u: np.ndarray) -> np.ndarray:
    """
    计算列符号，使每列绝对值最大的元素为正（并列时取下标最小者）。

    Args:
        u (np.ndarray): 列向量矩阵。

    Returns:
        np.ndarray: 取值为 ±1 的符号向量，长度等于列数。
    """
    if u.shape[1] == 0:
        return np.ones(0)
    idx = np.argmax(np.abs(u), axis=0)
    lead = u[idx, np.arange(u.shape[1])]
    return np.where(lead < 0.0, -1.0, 1.0)


def projector(u: np.ndarray) -> np.ndarray:
    """正交列矩阵 U 的投影矩阵 UUᵀ"""
    return u @ u.T
