# -*- coding: utf-8 -*-
import time
import traceback
import uuid
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, Optional, Tuple

import psutil

from .constant import ExecutorMode, TaskStatus
from .payload import TaskEnvelope, func_path
from ..logger import LogManager
from ..protocol import OperationProtocol as OPP, IdentityProtocol as IDP


class BaseExecutor(ABC, OPP, IDP):
    """
    任务执行器基类

    Attributes:
        tasks (list): 已序列化的任务封装，按提交顺序排列。
        task_id_map (dict): 任务ID到 (任务名称, 函数) 的映射。
        _results (dict): 成功任务的返回值。
        _errors (dict): 失败任务的异常文本。
        _statuses (dict): 任务状态。
        _elapsed (dict): 任务耗时（秒）。
        _memory_usage (dict): 任务执行期间的常驻内存增量（MB）。
    """
    def __init__(self, mode: ExecutorMode):
        self.mode: ExecutorMode = ExecutorMode(mode)
        self._name: str = "多线程任务" if self.mode == ExecutorMode.THREAD else "多进程任务"
        self._uuid: str = str(uuid.uuid4())

        self.tasks: List[dict] = []
        self.task_id_map: Dict[str, Tuple[str, Callable]] = {}
        self._task_counter = 0

        self._results = {}
        self._errors = {}
        self._statuses = {}
        self._elapsed = {}
        self._memory_usage = {}

        self._started: bool = False

    def get_name(self) -> str:
        return self._name

    def get_id(self) -> str:
        return f"{self._name}:{self._uuid}"

    @property
    def is_started(self) -> bool:
        return self._started

    @abstractmethod
    def start(self):
        """提交全部待执行任务"""

    @abstractmethod
    def join(self, return_results=True):
        """
        等待全部任务完成。

        Args:
            return_results (bool): 为 True 时返回 {任务ID: 返回值}，失败任务的返回值为 None。
        """

    def stop(self):
        self.reset()

    def submit(self, func: Callable, *args, task_name: Optional[str] = None, task_id: Optional[str] = None,
               **kwargs) -> str:
        """
        提交一个任务。

        Args:
            func (Callable): 任务函数；进程模式下须为模块级函数。
            *args: 位置参数。
            task_name (str, optional): 任务名称，默认取函数名。
            task_id (str, optional): 任务ID，默认自动生成；重复时抛出 ValueError。
            **kwargs: 关键字参数。

        Returns:
            str: 任务ID。
        """
        self._task_counter += 1
        name = task_name or getattr(func, "__name__", "anonymous")
        task_id = task_id or self._gen_task_id()
        if task_id in self.task_id_map:
            raise ValueError(f"任务ID重复: {task_id}")

        target = func if self.mode == ExecutorMode.THREAD else func_path(func)
        envelope = TaskEnvelope(task_id=task_id, func=target, args=list(args), kwargs=kwargs)

        self.task_id_map[task_id] = (name, func)
        self.tasks.append(envelope.serialize())
        self._statuses[task_id] = TaskStatus.PENDING.value
        return task_id

    def _gen_task_id(self) -> str:
        return f"子任务{self._task_counter}_{uuid.uuid4().hex[:6]}"

    def _record(self, outcome: tuple, return_results: bool):
        task_id, ok, payload, elapsed, mem_used = outcome
        name, _ = self.get_task_info(task_id)
        self._elapsed[task_id] = elapsed
        self._memory_usage[task_id] = mem_used
        logger = LogManager.get_instance()
        if ok:
            self._statuses[task_id] = TaskStatus.DONE.value
            if return_results:
                self._results[task_id] = payload
            logger.DEBUG(f"任务执行成功 | [{task_id}] {name} | 总耗时: {elapsed:.2f}s | 内存占用: {mem_used:.2f}MB")
        else:
            self._statuses[task_id] = TaskStatus.ERROR.value
            self._errors[task_id] = payload
            if return_results:
                self._results[task_id] = None
            logger.ERROR(f"任务执行失败 | [{task_id}] {name} | 总耗时: {elapsed:.2f}s: {payload}")

    def reset_tracking(self):
        self._results.clear()
        self._errors.clear()
        self._statuses.update({tid: TaskStatus.PENDING.value for tid in self.task_id_map})
        self._elapsed.clear()
        self._memory_usage.clear()

    def reset(self):
        self.tasks.clear()
        self.task_id_map.clear()
        self._task_counter = 0
        self._statuses.clear()
        self.reset_tracking()
        self._started = False

    def get_status(self, task_id):
        return self._statuses.get(task_id)

    def get_elapsed(self, task_id):
        return self._elapsed.get(task_id)

    def get_memory_usage(self, task_id):
        return self._memory_usage.get(task_id)

    def get_result(self, task_id):
        return self._results.get(task_id)

    def get_error(self, task_id):
        """失败任务的异常文本，成功或未执行时为 None"""
        return self._errors.get(task_id)

    def get_task_ids(self):
        return list(self.task_id_map.keys())

    def get_task_info(self, task_id):
        return self.task_id_map.get(task_id, (None, None))


def run_envelope(task: dict) -> tuple:
    """
    执行一个序列化的任务封装。

    Returns:
        tuple: (任务ID, 是否成功, 返回值或异常文本, 耗时, 内存增量MB)。
    """
    envelope = TaskEnvelope.deserialize(task)
    proc = psutil.Process()
    mem_start = proc.memory_info().rss / (1024 * 1024)
    t0 = time.time()
    try:
        result = envelope.resolve()(*envelope.args, **envelope.kwargs)
        ok, payload = True, result
    except Exception as e:
        ok, payload = False, f"{type(e).__name__}: {e}\n{traceback.format_exc()}"
    elapsed = time.time() - t0
    mem_used = proc.memory_info().rss / (1024 * 1024) - mem_start
    return envelope.task_id, ok, payload, elapsed, mem_used
