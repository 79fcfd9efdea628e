# 张量代数运算模块
"""
本模块实现稠密张量的基础运算，所有函数均为纯函数，不修改输入：
1. unfold / fold：模式展开与折叠
2. marginal_multiply / multi_multiply：模式乘积 ×_j
3. inner / norms / matrix_two_inf：内积与范数
4. outer / hadamard：外积与 Hadamard 积
5. kron_others：除模式 j 外各因子的 Kronecker 积

模式编号在 Python 接口中为 0 起始，错误信息中为 1 起始。
展开矩阵的列按剩余模式中最后一个变化最快的顺序排列，因此
unfold(C ×₁U₁…×_mU_m, j) = U_j · unfold(C, j) · kron_others(U, j)ᵀ。
"""
from functools import reduce
from typing import Dict, Optional, Sequence

import numpy as np

from .core import Shape
from ..errors import ShapeError


def as_array(t) -> np.ndarray:
    """转换为 float64 数组（DenseTensor 通过 __array__ 零拷贝）"""
    return np.asarray(t, dtype=np.float64)


def _check_mode(mode: int, ndim: int):
    if not 0 <= mode < ndim:
        raise ShapeError(f"模式 {mode + 1} 超出范围 [1, {ndim}]")


def unfold(t, mode: int) -> np.ndarray:
    """
    模式展开 M_j(T)，形状 d_j × d_{-j}。

    Args:
        t: 张量。
        mode (int): 模式（0 起始）。

    Returns:
        np.ndarray: C 顺序的展开矩阵。
    """
    a = as_array(t)
    _check_mode(mode, a.ndim)
    return np.ascontiguousarray(np.moveaxis(a, mode, 0).reshape(a.shape[mode], -1))


def fold(mat, mode: int, shape) -> np.ndarray:
    """
    unfold 的逆运算。

    Args:
        mat: d_mode × d_{-mode} 矩阵。
        mode (int): 模式（0 起始）。
        shape: 目标张量形状。

    Returns:
        np.ndarray: 折叠后的张量。

    Raises:
        ShapeError: 矩阵维度与形状不符。
    """
    dims = Shape.of(shape).dims
    _check_mode(mode, len(dims))
    a = as_array(mat)
    others = dims[:mode] + dims[mode + 1:]
    expected = (dims[mode], int(np.prod(others)))
    if a.shape != expected:
        raise ShapeError(f"折叠矩阵形状 {a.shape} 与模式 {mode + 1} 期望的 {expected} 不符")
    moved = a.reshape((dims[mode],) + others)
    return np.ascontiguousarray(np.moveaxis(moved, 0, mode))


def marginal_multiply(t, mode: int, a) -> np.ndarray:
    """
    模式乘积 T ×_j A，满足 M_j(T ×_j A) = A·M_j(T)。

    Args:
        t: 张量。
        mode (int): 模式（0 起始）。
        a: 矩阵，列数等于 d_mode。

    Returns:
        np.ndarray: 第 mode 维替换为 a 行数的新张量。
    """
    x = as_array(t)
    mat = as_array(a)
    _check_mode(mode, x.ndim)
    if mat.ndim != 2 or mat.shape[1] != x.shape[mode]:
        raise ShapeError(f"模式 {mode + 1} 乘积维度不符: 矩阵 {mat.shape}，张量维度 {x.shape[mode]}")
    out = np.tensordot(mat, x, axes=([1], [mode]))
    return np.ascontiguousarray(np.moveaxis(out, 0, mode))


def multi_multiply(t, mats: Sequence, skip: Optional[int] = None, transpose: bool = False) -> np.ndarray:
    """
    依次在各模式上做模式乘积 T ×₁A₁ ⋯ ×_mA_m。

    Args:
        t: 张量。
        mats (Sequence): 每个模式一个矩阵，None 表示跳过该模式。
        skip (int, optional): 额外跳过的模式。
        transpose (bool, optional): 为 True 时使用各矩阵的转置。

    Returns:
        np.ndarray: 结果张量。
    """
    x = as_array(t)
    if len(mats) != x.ndim:
        raise ShapeError(f"矩阵个数 {len(mats)} 与张量阶数 {x.ndim} 不符")
    for j, a in enumerate(mats):
        if a is None or j == skip:
            continue
        x = marginal_multiply(x, j, as_array(a).T if transpose else a)
    return x


def inner(a, b) -> float:
    """张量内积 ⟨A, B⟩"""
    x, y = as_array(a), as_array(b)
    if x.shape != y.shape:
        raise ShapeError(f"内积要求形状一致: {x.shape} 与 {y.shape}")
    return float(np.dot(x.reshape(-1), y.reshape(-1)))


def norms(t) -> Dict[str, float]:
    """Frobenius、ℓ₁、ℓ∞ 范数"""
    x = as_array(t).reshape(-1)
    if x.size == 0:
        return {"frobenius": 0.0, "l1": 0.0, "linf": 0.0}
    return {
        "frobenius": float(np.linalg.norm(x)),
        "l1": float(np.abs(x).sum()),
        "linf": float(np.abs(x).max()),
    }


def matrix_two_inf(mat) -> float:
    """‖A‖_{2,∞}：行 ℓ₂ 范数的最大值"""
    a = as_array(mat)
    if a.ndim != 2:
        raise ShapeError(f"two_inf 要求矩阵输入，实际维数 {a.ndim}")
    if a.size == 0:
        return 0.0
    return float(np.sqrt((a * a).sum(axis=1)).max())


def outer(vectors: Sequence) -> np.ndarray:
    """外积 v₁∘v₂∘…∘v_m"""
    vecs = [as_array(v).reshape(-1) for v in vectors]
    if len(vecs) < 2:
        raise ShapeError("外积至少需要两个向量")
    return reduce(np.multiply.outer, vecs)


def hadamard(a, b) -> np.ndarray:
    """Hadamard（逐元素）积"""
    x, y = as_array(a), as_array(b)
    if x.shape != y.shape:
        raise ShapeError(f"Hadamard 积要求形状一致: {x.shape} 与 {y.shape}")
    return x * y


def kron_others(mats: Sequence, mode: int) -> np.ndarray:
    """
    除模式 j 外各矩阵的 Kronecker 积，模式按升序排列，
    与 unfold 的列顺序一致。

    Args:
        mats (Sequence): 每个模式一个矩阵。
        mode (int): 排除的模式（0 起始）。

    Returns:
        np.ndarray: Kronecker 积矩阵。
    """
    _check_mode(mode, len(mats))
    rest = [as_array(a) for j, a in enumerate(mats) if j != mode]
    return reduce(np.kron, rest)
