from .constant import ExecutorMode, TaskStatus
from .main import MultiTaskExecutor
from .schema import ExecutorConfig

__all__ = [
    "ExecutorMode",
    "TaskStatus",
    "MultiTaskExecutor",
    "ExecutorConfig",
]
