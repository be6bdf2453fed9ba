import os
import logging
from typing import Any, Dict, List, Optional, Sequence

import dask

from berklab.errors import ConfigError

THREADS_ENV = "BERKLAB_THREADS"


def configure_scheduler(n_workers: Optional[int] = None) -> Dict[str, Any]:
    """
    Dask compute options: threaded scheduler with n_workers threads, taken
    from the argument, then BERKLAB_THREADS, then 1.
    """
    n_workers = n_workers or os.environ.get(THREADS_ENV, 1)
    try:
        n_workers = int(n_workers)
    except (TypeError, ValueError):
        raise ConfigError(f'{THREADS_ENV}={n_workers} is not an integer')
    if n_workers < 1:
        raise ConfigError(f'need at least one worker thread, got {n_workers}')
    return {"scheduler": "threads", "num_workers": n_workers}


def compute(tasks: Sequence, n_workers: Optional[int] = None) -> List:
    """
    Evaluate dask.delayed tasks; results come back in submission order.
    """
    if not tasks:
        return []
    options = configure_scheduler(n_workers)
    logging.debug(f'Computing {len(tasks)} tasks on {options["num_workers"]} threads')
    return list(dask.compute(*tasks, **options))
