from typing import Optional

from pydantic import BaseModel, Field

from .constant import ExecutorMode


class ExecutorConfig(BaseModel):
    mode: ExecutorMode = Field(default=ExecutorMode.THREAD, description="任务执行模式：thread / process")
    max_workers: Optional[int] = Field(default=None, ge=1, description="最大并行任务数，为空时取逻辑核数")
