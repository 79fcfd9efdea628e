import os
import sys
import queue
import datetime
import threading
from typing import Optional, TextIO

from .schema import LoggerConfig
from .formatter import format_log, format_console
from .utils import log_file_name


class LogWriter(threading.Thread):
    """
    后台日志写入线程：按日期与文件大小轮转写入文件，并可同时输出到标准错误。

    Args:
        config (LoggerConfig): 日志配置。
    """
    _SENTINEL = None

    def __init__(self, config: LoggerConfig):
        super().__init__(daemon=True, name="LogWriter")
        self.config: LoggerConfig = config

        self.log_queue: "queue.Queue" = queue.Queue()
        self.stop_event = threading.Event()

        self._file: Optional[TextIO] = None
        self._date: Optional[datetime.date] = None
        self._rotation_index = 0

    def enqueue(self, log_entry: dict):
        self.log_queue.put(log_entry)

    def close(self):
        """投递结束标记，写完队列中剩余日志后线程退出"""
        self.stop_event.set()
        self.log_queue.put(self._SENTINEL)

    def run(self):
        while True:
            entry = self.log_queue.get()
            if entry is self._SENTINEL:
                break
            self.write(entry)
        if self._file is not None:
            self._file.close()
            self._file = None

    def write(self, entry: dict):
        """写出单条日志（文件与控制台）"""
        if self.config.log_path is not None:
            handle = self._current_file()
            handle.write(format_log(entry, self.config.log_format) + "\n")
            handle.flush()
        if self.config.to_console:
            sys.stderr.write(format_console(entry) + "\n")
            sys.stderr.flush()

    def _current_file(self) -> TextIO:
        today = datetime.date.today()
        if self._file is None or today != self._date:
            # 新的一天：重置轮转序号并清理过期日志
            if self._file is not None:
                self._file.close()
            self._date = today
            self._rotation_index = 0
            self._file = self._open()
            self._cleanup_old_logs()
        elif self._file.tell() >= self.config.rotation_size * 1024 * 1024:
            self._file.close()
            self._rotation_index += 1
            self._file = self._open()
        return self._file

    def _open(self) -> TextIO:
        os.makedirs(self.config.log_path, exist_ok=True)
        name = log_file_name(str(self.config.log_path), self._date, self._rotation_index)
        return open(name, "a", encoding="utf-8")

    def _cleanup_old_logs(self):
        """删除修改时间早于 max_days 天前的日志文件"""
        threshold = datetime.datetime.now() - datetime.timedelta(days=self.config.max_days)
        for f in os.listdir(self.config.log_path):
            if not f.endswith(".log"):
                continue
            file_path = os.path.join(str(self.config.log_path), f)
            try:
                mtime = datetime.datetime.fromtimestamp(os.path.getmtime(file_path))
                if mtime < threshold:
                    os.remove(file_path)
            except OSError as e:
                sys.stderr.write(f"删除旧日志文件 {file_path} 时出错: {e}\n")
