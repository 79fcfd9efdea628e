"""
tuckerinfer 工具模块

JSON 编码（JsonEncoder / dump_json / load_json）：numpy 类型、枚举与可序列化对象的结果文件读写
"""
from .tool import (
    JsonEncoder,
    dump_json,
    load_json,
)

__all__ = [
    'JsonEncoder',
    'dump_json',
    'load_json',
]
