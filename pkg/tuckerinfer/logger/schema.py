from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field

from .constant import LogLevel, LogFormat


class LoggerConfig(BaseModel):
    log_path: Optional[Path] = Field(default=None, description="日志保存目录，为空时仅输出到控制台")
    log_level: LogLevel = Field(default=LogLevel.INFO, description="日志级别")
    log_format: LogFormat = Field(default=LogFormat.TEXT, description="日志文件格式 json / text")
    max_days: int = Field(default=7, ge=1, description="日志保存天数")
    to_console: bool = Field(default=True, description="是否输出到控制台（标准错误）")
    rotation_size: float = Field(default=10, gt=0, description="最大单一日志文件大小（MB）")
