from enum import Enum


class ExecutorMode(Enum):
    THREAD = "thread"
    PROCESS = "process"


class TaskStatus(Enum):
    PENDING = "pending"
    DONE = "done"
    ERROR = "error"
