# helpers.py

from __future__ import annotations

import logging
import os
import tempfile
import time
from functools import wraps
from pathlib import Path
from typing import Any
from typing import Callable

from tenacity import before_sleep_log
from tenacity import retry
from tenacity import retry_if_exception_type
from tenacity import stop_after_attempt
from tenacity import wait_fixed

from trivzero.constants import RETRY_ATTEMPTS
from trivzero.constants import RETRY_DELAY

log = logging.getLogger(__name__)


def timeit(func: Callable[..., Any]) -> Callable[..., Any]:
    @wraps(func)
    def timeit_wrapper(*args: Any, **kwargs: Any) -> Any:
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        total_time = time.perf_counter() - start_time
        log.info(f'{func.__name__}: took {total_time:.4f} seconds')
        return result

    return timeit_wrapper


def astimeit(func: Callable[..., Any]) -> Callable[..., Any]:
    @wraps(func)
    async def timeit_wrapper(*args: Any, **kwargs: Any) -> Any:
        start_time = time.perf_counter()
        result = await func(*args, **kwargs)
        total_time = time.perf_counter() - start_time
        log.info(f'async {func.__name__}: took {total_time:.4f} seconds')
        return result

    return timeit_wrapper


@retry(
    stop=stop_after_attempt(RETRY_ATTEMPTS),
    wait=wait_fixed(RETRY_DELAY),
    before_sleep=before_sleep_log(log, logging.WARN),
    retry=retry_if_exception_type(OSError),
    reraise=True,
)
def atomic_write(path: Path, text: str) -> None:
    """Write to a sibling temp file, then rename over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f'.{path.name}.', dir=path.parent)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
        Path(tmp).replace(path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    log.debug(f'wrote {path.as_posix()!r}')
