# 工具函数模块
"""
本模块包含观测数据累加用的 numba 内核。
主要功能包括：
1. 按固定顺序的散点累加（观测张量、残差修正）
2. 按扁平下标读取张量元素

累加严格按照观测顺序串行执行，结果按位可复现。
"""
import numpy as np
from numba import njit


@njit
def scatter_add(flat_index, values, size):
    """
    将 values 依次累加到长度为 size 的零向量的 flat_index 位置。

    Args:
        flat_index (np.ndarray): int64 扁平下标。
        values (np.ndarray): 与下标等长的 float64 值。
        size (int): 输出长度。

    Returns:
        np.ndarray: 累加结果。
    """
    out = np.zeros(size)
    for k in range(flat_index.shape[0]):
        out[flat_index[k]] += values[k]
    return out


@njit
def gather(flat, flat_index):
    """按扁平下标读取元素"""
    out = np.empty(flat_index.shape[0])
    for k in range(flat_index.shape[0]):
        out[k] = flat[flat_index[k]]
    return out
