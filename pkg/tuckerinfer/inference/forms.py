# 线性型模块
"""
本模块定义线性型 ⟨T, I⟩ 的下标张量 I。
线性型以稀疏形式保存（下标矩阵与权重），重复下标在构造时合并。

线性型文件为 CSV：表头 i1,…,im,w，下标 1 起始。
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..errors import ShapeError
from ..tensor import Shape, as_array


FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True, eq=False)
class LinearForm:
    """
    稀疏线性型。

    Attributes:
        indices (np.ndarray): k × m 的 int64 下标矩阵（0 起始），按规范线性化顺序排列且互不重复。
        weights (np.ndarray): 长度 k 的非零权重。

    Raises:
        ValueError: 没有非零权重。
    """
    indices: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        idx = np.array(self.indices, dtype=np.int64)
        if idx.ndim != 2:
            raise ShapeError(f"线性型下标须为二维矩阵，实际维数 {idx.ndim}")
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        if idx.shape[0] != w.shape[0]:
            raise ShapeError(f"线性型下标行数 {idx.shape[0]} 与权重个数 {w.shape[0]} 不符")
        if np.any(idx < 0):
            raise ShapeError("线性型下标须为非负整数")
        rows, inverse = np.unique(idx, axis=0, return_inverse=True)
        merged = np.zeros(rows.shape[0])
        np.add.at(merged, inverse.reshape(-1), w)
        keep = merged != 0.0
        if not np.any(keep):
            raise ValueError("线性型至少需要一个非零权重")
        rows, merged = rows[keep], merged[keep]
        rows.setflags(write=False)
        merged.setflags(write=False)
        object.__setattr__(self, "indices", rows)
        object.__setattr__(self, "weights", merged)

    @property
    def m(self) -> int:
        return int(self.indices.shape[1])

    @property
    def support(self) -> int:
        return int(self.weights.shape[0])

    @property
    def l1(self) -> float:
        return float(np.abs(self.weights).sum())

    @property
    def fro(self) -> float:
        return float(np.linalg.norm(self.weights))

    def check_shape(self, shape):
        shp = Shape.of(shape)
        if shp.m != self.m:
            raise ShapeError(f"线性型阶数 {self.m} 与张量阶数 {shp.m} 不符")
        bad = np.flatnonzero(np.any(self.indices >= np.array(shp.dims), axis=1))
        if bad.size:
            row = tuple(int(i) + 1 for i in self.indices[bad[0]])
            raise ShapeError(f"线性型下标 {row} 超出形状 {shp.dims}")
        return shp

    def flat_indices(self, shape) -> np.ndarray:
        shp = self.check_shape(shape)
        return np.ravel_multi_index(tuple(self.indices.T), shp.dims).astype(np.int64)

    def to_dense(self, shape) -> np.ndarray:
        """稠密下标张量 I"""
        shp = self.check_shape(shape)
        out = np.zeros(shp.size)
        out[self.flat_indices(shp)] = self.weights
        return out.reshape(shp.dims)

    def value(self, t) -> float:
        """⟨T, I⟩"""
        x = as_array(t)
        return float(np.dot(x.reshape(-1)[self.flat_indices(x.shape)], self.weights))

    @classmethod
    def from_dense(cls, t) -> "LinearForm":
        x = as_array(t)
        nz = np.flatnonzero(x.reshape(-1))
        return cls(np.stack(np.unravel_index(nz, x.shape), axis=1), x.reshape(-1)[nz])

    @classmethod
    def one_hot(cls, index: Sequence[int], weight: float = 1.0) -> "LinearForm":
        return cls(np.array([index]), np.array([weight]))

    @classmethod
    def sparse_sum(cls, indices, weights: Optional[Sequence[float]] = None) -> "LinearForm":
        """Σ_k w_k e_{ω_k}，权重缺省为 1"""
        idx = np.array(indices, dtype=np.int64)
        w = np.ones(idx.shape[0]) if weights is None else np.asarray(weights, dtype=np.float64)
        return cls(idx, w)

    @classmethod
    def coverage_form(cls, index: Sequence[int], m: int = 3) -> "LinearForm":
        """
        覆盖率实验的线性型 e₁₁…₁ + e₁₁…₂ − e_ω（0 起始下标 (0,…,0)、(0,…,0,1)）。

        Raises:
            ValueError: ω 与两个固定位置重合。
        """
        first = (0,) * m
        second = (0,) * (m - 1) + (1,)
        index = tuple(int(i) for i in index)
        if index in (first, second):
            raise ValueError(f"覆盖率线性型的下标 {tuple(i + 1 for i in index)} 不能与固定位置重合")
        return cls(np.array([first, second, index]), np.array([1.0, 1.0, -1.0]))

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.indices + 1, columns=[f"i{j + 1}" for j in range(self.m)])
        frame["w"] = self.weights
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "LinearForm":
        cols = list(frame.columns)
        m = len(cols) - 1
        if m < 2 or cols != [f"i{j + 1}" for j in range(m)] + ["w"]:
            raise ValueError(f"线性型文件表头不合法: {cols}")
        return cls(frame[cols[:-1]].to_numpy(dtype=np.int64) - 1, frame["w"].to_numpy(dtype=np.float64))


def read_form(path: Union[str, Path]) -> LinearForm:
    """读取线性型 CSV 文件"""
    return LinearForm.from_frame(pd.read_csv(path, float_precision="round_trip"))


def write_form(path: Union[str, Path], form: LinearForm):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    form.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT)
