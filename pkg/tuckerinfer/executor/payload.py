import importlib
from typing import Callable, Union

from ..protocol import SerializeProtocol


class TaskEnvelope(SerializeProtocol):
    """
    标准任务封装结构：
    封装 func、args、kwargs。进程模式下 func 为模块级函数的点分路径，便于跨进程传输。
    """
    def __init__(self, task_id: str, func: Union[str, Callable], args=None, kwargs=None):
        self.task_id: str = task_id
        self.func = func  # e.g. 'tuckerinfer.harness.trial.run_clt_trial'
        self.args = args or []
        self.kwargs = kwargs or {}

    def serialize(self) -> dict:
        return {
            "task_id": self.task_id,
            "func": self.func,
            "args": self.args,
            "kwargs": self.kwargs,
        }

    @classmethod
    def deserialize(cls, data: dict):
        return cls(
            task_id=data["task_id"],
            func=data["func"],
            args=data.get("args", []),
            kwargs=data.get("kwargs", {})
        )

    def resolve(self) -> Callable:
        return import_func_from_path(self.func) if isinstance(self.func, str) else self.func


def import_func_from_path(path: str):
    """从字符串路径动态导入函数，例如 'tuckerinfer.harness.trial.run_clt_trial'"""
    mod_path, func_name = path.rsplit(".", 1)
    module = importlib.import_module(mod_path)
    return getattr(module, func_name)


def func_path(func: Callable) -> str:
    """模块级函数的点分路径"""
    return f"{getattr(func, '__module__', 'unknown')}.{getattr(func, '__qualname__', 'anonymous')}"
