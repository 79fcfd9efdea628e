import json
from enum import Enum
from pathlib import Path
from datetime import datetime
from typing import Union, Any

import numpy as np


class JsonEncoder(json.JSONEncoder):
    """
    将结果对象序列化为JSON时，处理特定类型数据的默认方法：
        1. numpy 的 ndarray 转换为列表。
        2. numpy 整数、浮点、布尔标量转换为 Python 基本类型。
        3. datetime 格式化为字符串。
        4. Path 转换为字符串。
        5. Enum 取其 value。
        6. 实现了 serialize() 的对象（张量、因子分解）使用其字典形式。
    """
    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, datetime):
            return obj.strftime("%Y%m%d %H:%M:%S")
        elif isinstance(obj, Path):
            return str(obj)
        elif isinstance(obj, Enum):
            return obj.value
        elif hasattr(obj, "serialize"):
            return obj.serialize()

        return json.JSONEncoder.default(self, obj)


def dump_json(obj: Any, path: Union[str, Path], indent: int = 2):
    """
    以 UTF-8 写出 JSON 文件，自动创建父目录。

    Args:
        obj (Any): 可序列化对象。
        path (Union[str, Path]): 目标文件路径。
        indent (int, optional): 缩进，默认 2。
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(obj, f, cls=JsonEncoder, indent=indent, ensure_ascii=False)
        f.write("\n")


def load_json(path: Union[str, Path]) -> Any:
    """读取 UTF-8 JSON 文件"""
    with open(Path(path), "r", encoding="utf-8") as f:
        return json.load(f)
