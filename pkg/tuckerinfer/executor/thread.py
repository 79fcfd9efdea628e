# -*- coding: utf-8 -*-
import multiprocessing as mp
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Optional

from .base import BaseExecutor, run_envelope
from .constant import ExecutorMode


class ThreadExecutor(BaseExecutor):
    """多线程任务执行器，numba 与 BLAS 内核在计算期间释放 GIL"""
    def __init__(self, max_workers: Optional[int] = None):
        super().__init__(ExecutorMode.THREAD)
        self.max_workers = max_workers or mp.cpu_count()
        self._executor: Optional[ThreadPoolExecutor] = None
        self._futures: dict = {}

    def start(self):
        self.reset_tracking()
        self._futures = {}
        if not self.tasks:
            return
        self._executor = ThreadPoolExecutor(max_workers=self.max_workers)
        for task in self.tasks:
            future = self._executor.submit(run_envelope, task)
            self._futures[future] = task["task_id"]
        self._started = True

    def join(self, return_results=True):
        if self._executor is not None:
            for future in as_completed(self._futures):
                self._record(future.result(), return_results)
            self._executor.shutdown(wait=True)
            self._executor = None
        return self._results if return_results else None
