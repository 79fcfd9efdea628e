import datetime
import os


def get_current_time() -> str:
    return datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S.%f")[:-3]


def log_file_name(log_dir: str, log_date: datetime.date, rotation_index: int = 0) -> str:
    """
    日志文件名：rotation_index 为 0 时为 YYYY-MM-DD.log，否则为 YYYY-MM-DD_1.log 等
    """
    base_name = log_date.strftime("%Y-%m-%d")
    filename = f"{base_name}_{rotation_index}.log" if rotation_index > 0 else f"{base_name}.log"
    return os.path.join(log_dir, filename)
