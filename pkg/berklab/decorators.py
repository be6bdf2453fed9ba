import functools
import logging
from time import perf_counter


class DuplicateFilter(logging.Filter):
    """Drop a record identical to the one just emitted."""
    def filter(self, record):
        current_log = (record.module, record.levelno, record.msg)
        if current_log != getattr(self, "last_log", None):
            self.last_log = current_log
            return True
        return False


def measure_time(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = perf_counter()
        result = func(*args, **kwargs)
        logging.info(f'{func.__name__}: elapsed time is {perf_counter() - start:.3f} s')
        return result
    return wrapper
