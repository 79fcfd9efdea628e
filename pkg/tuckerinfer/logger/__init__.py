from .core import LogManager, get_logger
from .decorator import auto_log
from .schema import LoggerConfig
from .constant import LogLevel, LogFormat


__all__ = ['LogManager', 'get_logger', 'auto_log', 'LoggerConfig', 'LogLevel', 'LogFormat']
