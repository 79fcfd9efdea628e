# 异常定义模块
"""
本模块定义了 tuckerinfer 的异常体系。
命令行入口按异常类别映射退出码：
1. ShapeError / NoisePreconditionError：输入不合法（退出码 2）
2. NumericalError 及其子类：数值计算失败（退出码 3）
3. SchemaError：配置或文件结构校验失败（退出码 4）

所有面向用户的下标均为 1 起始。
"""
from typing import Iterable, List, Optional


class TuckerInferError(Exception):
    """tuckerinfer 所有异常的基类"""


class ShapeError(TuckerInferError, ValueError):
    """形状、模式、秩或维度不匹配，或下标越界"""


class NoisePreconditionError(TuckerInferError, ValueError):
    """
    噪声模型的前置条件不满足。

    Args:
        kind (str): 噪声类型名称。
        index (tuple): 第一个违反条件的元素下标（0 起始，消息中转换为 1 起始）。
        value (float): 该元素的取值。
    """
    def __init__(self, kind: str, index: tuple, value: float):
        self.kind = kind
        self.index = tuple(int(i) for i in index)
        self.value = float(value)
        one_based = tuple(i + 1 for i in self.index)
        super().__init__(f"噪声模型[{kind}]前置条件不满足: 下标 {one_based} 处取值 {self.value}")


class NumericalError(TuckerInferError, ArithmeticError):
    """
    数值计算失败。

    Args:
        message (str): 错误描述。
        stage (str, optional): 出错的计算阶段，如 "tangent"、"rgd_offline"。
    """
    def __init__(self, message: str, stage: Optional[str] = None):
        self.stage = stage
        prefix = f"[{stage}] " if stage else ""
        super().__init__(prefix + message)


class DegenerateFormError(NumericalError):
    """线性型在切空间上的投影为零，无法标准化"""
    def __init__(self, form_index: int, stage: Optional[str] = "inference"):
        self.form_index = form_index
        super().__init__(f"第 {form_index + 1} 个线性型的切空间投影为零", stage=stage)


class SchemaError(TuckerInferError, ValueError):
    """
    配置或文件结构校验失败，记录所有出错的字段。

    Args:
        message (str): 错误描述。
        keys (Iterable[str], optional): 出错字段的点分路径列表。
    """
    def __init__(self, message: str, keys: Iterable[str] = ()):
        self.keys: List[str] = list(keys)
        detail = f": {', '.join(self.keys)}" if self.keys else ""
        super().__init__(message + detail)
