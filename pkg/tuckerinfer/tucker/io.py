from pathlib import Path
from typing import Union

from .core import TuckerFactorization
from ..utils.tool import dump_json, load_json


def read_factorization(path: Union[str, Path]) -> TuckerFactorization:
    """读取分解文件 {"schema_version", "core": 张量, "factors": [矩阵...]}"""
    return TuckerFactorization.from_dict(load_json(path))


def write_factorization(path: Union[str, Path], f: TuckerFactorization, **extra):
    """写出分解文件，extra 中的字段（如 diagnostics）附加在顶层"""
    payload = f.to_dict()
    payload.update(extra)
    dump_json(payload, path)
