from pathlib import Path
from typing import Union

import numpy as np

from .core import DenseTensor
from ..errors import ShapeError
from ..utils.tool import dump_json, load_json


def matrix_to_dict(mat) -> dict:
    """矩阵文件格式 {"rows","cols","data"}，data 按行优先"""
    a = np.asarray(mat, dtype=np.float64)
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": a.reshape(-1).tolist()}


def matrix_from_dict(payload: dict) -> np.ndarray:
    try:
        rows, cols, data = int(payload["rows"]), int(payload["cols"]), payload["data"]
    except KeyError as e:
        raise ShapeError(f"矩阵文件缺少字段 {e}") from None
    a = np.array(data, dtype=np.float64)
    if a.size != rows * cols:
        raise ShapeError(f"矩阵数据长度 {a.size} 与 {rows}×{cols} 不符")
    return a.reshape(rows, cols)


def read_tensor(path: Union[str, Path]) -> DenseTensor:
    """读取张量文件 {"shape":[...], "data":[...]}"""
    return DenseTensor.from_dict(load_json(path))


def write_tensor(path: Union[str, Path], t):
    """写出张量文件"""
    tensor = t if isinstance(t, DenseTensor) else DenseTensor(t)
    dump_json(tensor.to_dict(), path)
