# 对称特征分解模块
"""
本模块提供对称矩阵的循环 Jacobi 特征分解。
主要功能包括：
1. jacobi_eigh：numba 加速的循环 Jacobi 扫描内核
2. eigh_sorted：带确定性排序（特征值降序，相同特征值按原始下标升序）的封装

收敛条件为非对角 Frobenius 范数小于 tol·‖A‖_F，最多 max_sweeps 轮扫描。
扫描顺序固定，结果与线程调度无关。
"""
import numpy as np
from numba import njit

from ..errors import NumericalError


JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 30


@njit
def jacobi_eigh(a, tol, max_sweeps):
    """
    循环 Jacobi 特征分解内核。

    Args:
        a (np.ndarray): 对称方阵，不会被修改。
        tol (float): 相对收敛阈值。
        max_sweeps (int): 最大扫描轮数。

    Returns:
        Tuple[np.ndarray, np.ndarray, int]: 未排序的特征值、按列排列的特征向量、实际扫描轮数。
    """
    n = a.shape[0]
    A = a.copy()
    V = np.eye(n)
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += A[i, j] * A[i, j]
    norm = np.sqrt(norm)
    sweeps = 0
    if norm == 0.0:
        return np.zeros(n), V, sweeps
    threshold = tol * norm

    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += A[i, j] * A[i, j]
        if np.sqrt(off) < threshold:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    if k != p and k != q:
                        akp = A[k, p]
                        akq = A[k, q]
                        A[k, p] = c * akp - s * akq
                        A[p, k] = A[k, p]
                        A[k, q] = s * akp + c * akq
                        A[q, k] = A[k, q]
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * vkq
                    V[k, q] = s * vkp + c * vkq

    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i]
    return w, V, sweeps


def eigh_sorted(mat: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """
    对称矩阵特征分解，特征值降序排列。

    Args:
        mat (np.ndarray): 对称方阵，输入先做 (A+Aᵀ)/2 对称化。
        tol (float, optional): 相对收敛阈值，默认 1e-13。
        max_sweeps (int, optional): 最大扫描轮数，默认 30。

    Returns:
        Tuple[np.ndarray, np.ndarray]: 降序特征值与对应的特征向量矩阵（按列）。

    Raises:
        NumericalError: 输入不是方阵或含有非有限值。
    """
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NumericalError(f"特征分解要求方阵，实际形状 {mat.shape}", stage="eigh")
    if not np.all(np.isfinite(mat)):
        raise NumericalError("特征分解输入含有非有限值", stage="eigh")
    sym = np.ascontiguousarray(0.5 * (mat + mat.T))
    w, v, _ = jacobi_eigh(sym, tol, max_sweeps)
    # 稳定排序保证相同特征值按原始下标升序
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]
