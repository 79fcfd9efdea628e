# -*- coding: utf-8 -*-
import uuid
from collections import Counter
from typing import Dict, List, Optional, Union

import pandas as pd

from .base import BaseExecutor
from .constant import ExecutorMode
from .process import ProcessExecutor
from .schema import ExecutorConfig
from .thread import ThreadExecutor
from ..protocol import OperationProtocol as OPP, IdentityProtocol as IDP


class MultiTaskExecutor(OPP, IDP):
    """
    多任务执行器，支持 process / thread 两种模式。
    - process：使用 futures.ProcessPoolExecutor，任务函数按点分路径在子进程中导入
    - thread：使用 futures.ThreadPoolExecutor

    单个任务失败不影响其余任务，失败任务的状态为 error，异常文本可由 get_error 取得。
    任务列表与状态均由内部执行器持有，本类只做转发。

    Args:
        mode (str, optional): 模式，默认为 'thread'。
        max_workers (int, optional): 最大并行任务数。
    """
    def __init__(self, mode: Union[str, ExecutorMode] = ExecutorMode.THREAD, max_workers: Optional[int] = None):
        try:
            mode = ExecutorMode(mode)
        except ValueError:
            raise ValueError(f"请输入正确的模式: process / thread，实际为 {mode}")
        self.mode: ExecutorMode = mode
        self._uuid: str = str(uuid.uuid4())
        if self.mode == ExecutorMode.PROCESS:
            self.executor: BaseExecutor = ProcessExecutor(max_workers)
        else:
            self.executor = ThreadExecutor(max_workers)

    @classmethod
    def from_config(cls, config: ExecutorConfig) -> "MultiTaskExecutor":
        return cls(config.mode, config.max_workers)

    def get_name(self) -> str:
        return self.executor.get_name()

    def get_id(self) -> str:
        return f"{self.get_name()}:{self._uuid}"

    @property
    def max_workers(self) -> int:
        return self.executor.max_workers

    @property
    def tasks(self) -> List[dict]:
        return self.executor.tasks

    @property
    def task_id_map(self) -> dict:
        return self.executor.task_id_map

    @property
    def is_started(self) -> bool:
        return self.executor.is_started

    def submit(self, func, *args, task_name=None, task_id=None, **kwargs):
        return self.executor.submit(func, *args, task_name=task_name, task_id=task_id, **kwargs)

    def start(self):
        self.executor.start()

    def join(self, return_results=True):
        return self.executor.join(return_results=return_results)

    def run(self) -> Dict[str, object]:
        """启动并等待全部任务，返回按提交顺序排列的 {任务ID: 返回值}"""
        self.start()
        results = self.join(return_results=True)
        return {tid: results.get(tid) for tid in self.get_task_ids()}

    def get_task_ids(self):
        return self.executor.get_task_ids()

    def get_task_info(self, task_id):
        return self.executor.get_task_info(task_id)

    def get_result(self, task_id):
        return self.executor.get_result(task_id)

    def get_error(self, task_id):
        return self.executor.get_error(task_id)

    def get_status(self, task_id):
        return self.executor.get_status(task_id)

    def get_elapsed(self, task_id):
        return self.executor.get_elapsed(task_id)

    def get_memory_usage(self, task_id):
        return self.executor.get_memory_usage(task_id)

    def reset(self):
        self.executor.reset()

    def stop(self):
        self.executor.stop()

    def failed(self) -> List[str]:
        return [tid for tid in self.get_task_ids() if self.get_status(tid) == "error"]

    def status_counts(self) -> Dict[str, int]:
        return dict(Counter(self.get_status(tid) for tid in self.get_task_ids()))

    def summary(self) -> List[dict]:
        summary_data = []
        for task_id in self.get_task_ids():
            name, _ = self.get_task_info(task_id)
            summary_data.append({
                "任务ID": task_id,
                "任务名称": name,
                "任务状态": self.get_status(task_id),
                "总耗时": self.get_elapsed(task_id),
                "内存占用": self.get_memory_usage(task_id),
                "异常信息": self.get_error(task_id),
            })
        return summary_data

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(self.summary())
