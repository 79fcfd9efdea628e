# -*- coding: utf-8 -*-
import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Optional

from .base import BaseExecutor, run_envelope
from .constant import ExecutorMode


class ProcessExecutor(BaseExecutor):
    """
    多进程任务执行器。

    Args:
        max_workers (int, optional): 最大工作进程数，默认为 CPU 核心数减一，且不超过 60。
    """
    def __init__(self, max_workers: Optional[int] = None):
        super().__init__(ExecutorMode.PROCESS)
        limit = max(1, min(60, mp.cpu_count() - 1))
        self.max_workers = min(max_workers, limit) if max_workers else limit
        self._pool: Optional[ProcessPoolExecutor] = None
        self._futures: list = []

    def start(self):
        self.reset_tracking()
        if not self.tasks:
            return
        self._pool = ProcessPoolExecutor(max_workers=self.max_workers)
        self._futures = [self._pool.submit(run_envelope, task) for task in self.tasks]
        self._started = True

    def join(self, return_results=True):
        if self._pool is not None:
            for future in as_completed(self._futures):
                self._record(future.result(), return_results)
            self._pool.shutdown()
            self._pool = None
        return self._results if return_results else None
