import time
import functools
import traceback

from .core import LogManager
from ..errors import NumericalError


def auto_log(func):
    """
    记录函数耗时。数值失败只记录出错阶段，其余异常附带堆栈；异常均重新抛出。
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        lm = LogManager.get_instance()
        log_id = f"{func.__module__}.{func.__name__}"
        t0 = time.time()
        lm.DEBUG(f"{func.__name__} 开始", log_id=log_id)
        try:
            result = func(*args, **kwargs)
        except NumericalError as e:
            lm.ERROR(f"{func.__name__} 数值计算失败（阶段 {e.stage or '未知'}）: {e}", log_id=log_id)
            raise
        except Exception as e:
            lm.ERROR(f"{func.__name__} 异常: {e}\n{traceback.format_exc()}", log_id=log_id)
            raise
        lm.INFO(f"{func.__name__} 完成，耗时 {time.time() - t0:.3f} 秒", log_id=log_id)
        return result
    return wrapper
