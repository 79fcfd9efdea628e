# 观测数据模块
"""
本模块实现迹回归模型 Y_i = ⟨T, X_i⟩ + ξ_i 的观测集合与抽样。
X_i 为从 d* 个规范基中有放回均匀抽取的单位张量，因此观测集合记录
每个样本的多重下标与观测值，同一位置允许重复出现。

观测文件为 CSV：表头 i1,…,im,y，下标 1 起始，每行一个样本。
"""
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np
import pandas as pd

from .constant import Purpose
from .noise import NoiseModel
from .rng import make_rng
from ..algolib import gather
from ..errors import ShapeError
from ..tensor import Shape, as_array


FLOAT_FORMAT = "%.17g"


def _readonly(a, dtype) -> np.ndarray:
    arr = np.array(a, dtype=dtype, order="C")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ObservationSet:
    """
    观测集合。

    Attributes:
        shape (Shape): 张量形状。
        indices (np.ndarray): n × m 的 int64 下标矩阵（0 起始）。
        values (np.ndarray): 长度 n 的观测值。

    Raises:
        ShapeError: 下标越界或与观测值长度不符。
    """
    shape: Shape
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        shape = Shape.of(self.shape)
        indices = _readonly(self.indices, np.int64).reshape(-1, shape.m)
        values = _readonly(self.values, np.float64).reshape(-1)
        if indices.shape[0] != values.shape[0]:
            raise ShapeError(f"下标行数 {indices.shape[0]} 与观测值个数 {values.shape[0]} 不符")
        if indices.size:
            bad = np.flatnonzero(np.any((indices < 0) | (indices >= np.array(shape.dims)), axis=1))
            if bad.size:
                row = tuple(int(i) + 1 for i in indices[bad[0]])
                raise ShapeError(f"第 {bad[0] + 1} 个样本下标 {row} 超出形状 {shape.dims}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def __len__(self):
        return self.n

    def flat_indices(self) -> np.ndarray:
        """规范线性化顺序下的扁平下标"""
        if self.n == 0:
            return np.empty(0, dtype=np.int64)
        return np.ravel_multi_index(tuple(self.indices.T), self.shape.dims).astype(np.int64)

    def subset(self, mask) -> "ObservationSet":
        """按布尔掩码或下标数组选取样本，保持原有顺序"""
        return ObservationSet(self.shape, self.indices[mask], self.values[mask])

    def split(self, fraction: float, rng: np.random.Generator) -> Tuple["ObservationSet", "ObservationSet"]:
        """
        样本拆分：随机选取 ⌊fraction·n⌋ 个样本作为第一部分，其余作为第二部分。

        Args:
            fraction (float): 第一部分的比例，须在 (0, 1) 内。
            rng (np.random.Generator): 拆分随机数流。

        Returns:
            Tuple[ObservationSet, ObservationSet]: 两部分观测，各自保持原有顺序。
        """
        if not 0.0 < fraction < 1.0:
            raise ValueError(f"拆分比例须在 (0, 1) 内，实际为 {fraction}")
        mask = np.zeros(self.n, dtype=bool)
        mask[rng.permutation(self.n)[: int(math.floor(fraction * self.n))]] = True
        return self.subset(mask), self.subset(~mask)

    def columns(self):
        return [f"i{j + 1}" for j in range(self.shape.m)] + ["y"]

    def to_frame(self) -> pd.DataFrame:
        """转换为 DataFrame，下标列 1 起始"""
        frame = pd.DataFrame(self.indices + 1, columns=self.columns()[:-1])
        frame["y"] = self.values
        return frame

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, shape=None) -> "ObservationSet":
        """
        由 DataFrame 构造观测集合。

        Args:
            frame (pd.DataFrame): 列为 i1..im,y，下标 1 起始。
            shape (optional): 张量形状；为空时取各模式最大下标。

        Raises:
            ValueError: 表头不合法。
        """
        cols = list(frame.columns)
        m = len(cols) - 1
        if m < 2 or cols != [f"i{j + 1}" for j in range(m)] + ["y"]:
            raise ValueError(f"观测文件表头不合法: {cols}")
        indices = frame[cols[:-1]].to_numpy(dtype=np.int64) - 1
        if shape is None:
            if not len(frame):
                raise ShapeError("空观测文件无法推断形状，请指定形状")
            shape = tuple(int(v) + 1 for v in indices.max(axis=0))
        shape = Shape.of(shape)
        if shape.m != m:
            raise ShapeError(f"观测下标列数 {m} 与张量阶数 {shape.m} 不符")
        return cls(shape, indices, frame["y"].to_numpy(dtype=np.float64))


def read_observations(path: Union[str, Path], shape=None) -> ObservationSet:
    """读取观测 CSV 文件"""
    frame = pd.read_csv(path, float_precision="round_trip")
    return ObservationSet.from_frame(frame, shape)


def write_observations(path: Union[str, Path], obs: ObservationSet):
    """写出观测 CSV 文件，浮点数以 17 位有效数字保存"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    obs.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT)


def sampling_count(shape, p: float) -> int:
    """采样率 p 对应的样本量 n = ⌈p·d*⌉"""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"采样率须在 (0, 1] 内，实际为 {p}")
    return int(math.ceil(p * Shape.of(shape).size))


def full_observation(t) -> ObservationSet:
    """无噪声的完全观测：每个位置恰好一个样本，按规范线性化顺序排列"""
    x = as_array(t)
    indices = np.stack(np.unravel_index(np.arange(x.size), x.shape), axis=1)
    return ObservationSet(Shape(x.shape), indices, x.reshape(-1))


def sample_observations(t, n: int, noise: NoiseModel, seed: int, trial: int = 0) -> ObservationSet:
    """
    从迹回归模型中有放回均匀抽取 n 个观测。

    下标由 "obs" 流抽取，噪声由 "noise" 流抽取，两者互不影响。

    Args:
        t: 均值张量。
        n (int): 样本量。
        noise (NoiseModel): 噪声模型。
        seed (int): 随机种子。
        trial (int, optional): 试验编号。

    Returns:
        ObservationSet: 观测集合。

    Raises:
        NoisePreconditionError: 均值张量不满足噪声模型前置条件。
    """
    x = as_array(t)
    if n < 0:
        raise ValueError(f"样本量须为非负整数，实际为 {n}")
    noise.check(x)
    idx_rng = make_rng(seed, trial, Purpose.OBS)
    noise_rng = make_rng(seed, trial, Purpose.NOISE)
    flat_index = idx_rng.integers(0, x.size, size=n, dtype=np.int64)
    means = gather(x.reshape(-1), flat_index)
    values = noise.draw(means, flat_index, noise_rng)
    indices = np.stack(np.unravel_index(flat_index, x.shape), axis=1)
    return ObservationSet(Shape(x.shape), indices, values)
