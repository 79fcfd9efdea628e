import json

from .constant import LogFormat, TEXT_TEMPLATE, CONSOLE_TEMPLATE


def format_log(log_entry: dict, format_type: LogFormat = LogFormat.TEXT) -> str:
    """按文件格式格式化日志条目"""
    if format_type == LogFormat.JSON:
        return json.dumps(log_entry, ensure_ascii=False)
    return TEXT_TEMPLATE.format(**log_entry)


def format_console(log_entry: dict) -> str:
    """控制台精简格式"""
    return CONSOLE_TEMPLATE.format(**log_entry)
