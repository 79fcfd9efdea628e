import os
import uuid
import threading
from pathlib import Path
from typing import Union, Optional

from .constant import LOG_LEVELS, LogLevel
from .schema import LoggerConfig
from .writer import LogWriter
from .utils import get_current_time

from ..protocol import OperationProtocol as OPP, IdentityProtocol as IDP


class LogManager(OPP, IDP):
    """
    日志管理器单例。

    start() 之后日志交由后台线程写出；未启动（或已停止）时同步写出，
    库函数因此可以直接记录日志而无需管理写入线程的生命周期。
    """
    __instance = None
    __lock = threading.Lock()

    @staticmethod
    def get_instance(config: Union[LoggerConfig, dict, None] = None) -> "LogManager":
        """
        获取 LogManager 的单例实例。首次调用时使用 config 初始化，
        之后传入的 config 会覆盖现有配置（写入线程运行时除外）。
        """
        with LogManager.__lock:
            if LogManager.__instance is None:
                LogManager.__instance = LogManager(config)
            elif config is not None and not LogManager.__instance.status():
                LogManager.__instance.configure(config)
            return LogManager.__instance

    @staticmethod
    def reset_instance():
        """停止并丢弃单例（用于测试与重复的命令行调用）"""
        with LogManager.__lock:
            if LogManager.__instance is not None:
                LogManager.__instance.stop()
            LogManager.__instance = None

    def __init__(self, config: Union[LoggerConfig, dict, None] = None):
        if LogManager.__instance is not None:
            raise RuntimeError("LogManager 为单例，请使用 get_instance() 获取实例。")

        self._name = "日志管理器"
        self._uuid: str = str(uuid.uuid4())

        self.config: LoggerConfig = self._overwrite_config(config)
        self.log_writer: LogWriter = LogWriter(self.config)
        self._started: bool = False

    def configure(self, config: Union[LoggerConfig, dict]):
        self.config = self._overwrite_config(config)
        self.log_writer = LogWriter(self.config)

    @staticmethod
    def _overwrite_config(config: Union[LoggerConfig, dict, None]) -> LoggerConfig:
        if config is None:
            config = LoggerConfig()
        elif isinstance(config, dict):
            config = LoggerConfig(**config)
        else:
            config = config.model_copy()

        if os.getenv("LOG_PATH"):
            config.log_path = Path(os.getenv("LOG_PATH"))
        if os.getenv("LOG_LEVEL"):
            config.log_level = LogLevel(os.getenv("LOG_LEVEL").upper())
        return config

    def get_id(self):
        return f"{self._name}:{self._uuid}"

    def get_name(self):
        return self._name

    def start(self):
        if not self._started:
            self.log_writer.start()
            self._started = True
            self.log("DEBUG", "日志管理器已启动")

    def join(self):
        pass

    def stop(self):
        if self._started:
            self.log("DEBUG", "关闭日志管理器")
            self.log_writer.close()
            self.log_writer.join()
            self._started = False
            self.log_writer = LogWriter(self.config)

    def status(self) -> bool:
        return self._started

    def INFO(self, message: str, log_id: Optional[str] = None):
        self.log("INFO", message, log_id)

    def DEBUG(self, message: str, log_id: Optional[str] = None):
        self.log("DEBUG", message, log_id)

    def WARNING(self, message: str, log_id: Optional[str] = None):
        self.log("WARNING", message, log_id)

    def CRITICAL(self, message: str, log_id: Optional[str] = None):
        self.log("CRITICAL", message, log_id)

    def ERROR(self, message: str, log_id: Optional[str] = None):
        self.log("ERROR", message, log_id)

    def enabled(self, level: str) -> bool:
        return LOG_LEVELS.get(level, 0) >= LOG_LEVELS.get(self.config.log_level.value, 0)

    def log(self, level: str, message: str, log_id: Optional[str] = None):
        if not self.enabled(level):
            return
        log_entry = {
            "timestamp": get_current_time(),
            "level": level,
            "log_id": log_id if log_id else "DEFAULT",
            "thread": threading.current_thread().name,
            "process": os.getpid(),
            "message": message
        }
        if self._started:
            self.log_writer.enqueue(log_entry)
        else:
            self.log_writer.write(log_entry)


def get_logger() -> LogManager:
    """获取日志管理器单例（未初始化时使用默认配置）"""
    return LogManager.get_instance()
