# 稠密张量数据结构模块
"""
本模块定义张量代数的基础数据类型：
1. Shape：张量形状，提供 d*、d̄、d̲、d_{-j} 等常用量
2. DenseTensor：只读的 float64 稠密张量

规范线性化顺序为最后一个模式变化最快（即 numpy 的 C 顺序），
偏移量 offset(i₁..i_m) = ((i₁·d₂ + i₂)·d₃ + …)（0 起始）。
"""
import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from ..errors import ShapeError, NumericalError
from ..protocol import SerializeProtocol


@dataclass(frozen=True)
class Shape:
    """
    张量形状。

    Attributes:
        dims (Tuple[int, ...]): 各模式维度 d₁..d_m，均 ≥ 1，阶数 m ≥ 2。
    """
    dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 2:
            raise ShapeError(f"张量阶数须不小于 2，实际为 {len(dims)}")
        if any(d < 1 for d in dims):
            raise ShapeError(f"各模式维度须为正整数，实际为 {dims}")
        if math.prod(dims) > np.iinfo(np.int64).max:
            raise ShapeError(f"张量元素总数超出下标范围: {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def of(cls, value: Union["Shape", Sequence[int]]) -> "Shape":
        return value if isinstance(value, Shape) else cls(tuple(value))

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        """d* = Πd_j"""
        return math.prod(self.dims)

    @property
    def d_max(self) -> int:
        return max(self.dims)

    @property
    def d_min(self) -> int:
        return min(self.dims)

    def d_minus(self, mode: int) -> int:
        """d_{-j} = d*/d_j"""
        return self.size // self.dims[mode]

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)

    def __getitem__(self, item):
        return self.dims[item]


class DenseTensor(SerializeProtocol):
    """
    只读稠密张量，数据为 C 顺序 float64 数组。

    Args:
        data: 可转换为数组的数据；若给定 shape，则按规范线性化顺序解释为扁平数据。
        shape (optional): 目标形状。

    Raises:
        ShapeError: 数据长度与形状不符，或阶数小于 2。
        NumericalError: 含有非有限值。
    """
    __slots__ = ("_array", "_shape")

    def __init__(self, data, shape: Union[Shape, Sequence[int], None] = None):
        arr = np.array(data, dtype=np.float64, order="C")
        if shape is not None:
            shp = Shape.of(shape)
            if arr.size != shp.size:
                raise ShapeError(f"数据长度 {arr.size} 与形状 {shp.dims} 的元素数 {shp.size} 不符")
            arr = arr.reshape(shp.dims)
        else:
            shp = Shape(arr.shape)
        if not np.all(np.isfinite(arr)):
            raise NumericalError("张量含有非有限值", stage="tensor")
        arr.setflags(write=False)
        self._array = arr
        self._shape = shp

    @property
    def shape(self) -> Shape:
        return self._shape

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def data(self) -> np.ndarray:
        """规范线性化顺序的扁平数据"""
        return self._array.reshape(-1)

    def __array__(self, dtype=None, copy=None):
        return self._array if dtype is None else self._array.astype(dtype)

    def __getitem__(self, item):
        return self._array[item]

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self._shape == other._shape and np.array_equal(self._array, other._array)

    def __repr__(self):
        return f"DenseTensor(shape={self._shape.dims})"

    def to_dict(self) -> dict:
        return {"shape": list(self._shape.dims), "data": self.data.tolist()}

    @classmethod
    def from_dict(cls, payload: dict) -> "DenseTensor":
        try:
            return cls(payload["data"], shape=payload["shape"])
        except KeyError as e:
            raise ShapeError(f"张量文件缺少字段 {e}") from None

    def serialize(self) -> dict:
        return self.to_dict()

    @classmethod
    def deserialize(cls, data: dict) -> "DenseTensor":
        return cls.from_dict(data)
