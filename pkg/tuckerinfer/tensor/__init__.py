"""
Tensor模块，提供稠密张量代数

主要组件:
- Shape / DenseTensor: 形状与只读稠密张量
- unfold / fold / marginal_multiply: 模式展开与模式乘积
- inner / norms / outer / hadamard: 内积、范数与逐元素运算
- read_tensor / write_tensor: 张量 JSON 文件读写
"""
from .core import Shape, DenseTensor
from .ops import (
    as_array, unfold, fold, marginal_multiply, multi_multiply,
    inner, norms, matrix_two_inf, outer, hadamard, kron_others
)
from .io import matrix_to_dict, matrix_from_dict, read_tensor, write_tensor

__all__ = [
    # 数据类型
    "Shape", "DenseTensor",
    # 运算
    "as_array", "unfold", "fold", "marginal_multiply", "multi_multiply",
    "inner", "norms", "matrix_two_inf", "outer", "hadamard", "kron_others",
    # 文件
    "matrix_to_dict", "matrix_from_dict", "read_tensor", "write_tensor",
]
