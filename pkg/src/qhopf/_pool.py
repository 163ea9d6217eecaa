"""Optional fan-out of independent checks over a thread pool.

The QHOPF_THREADS environment variable caps the pool: unset or 1 runs
checks sequentially, 0 means one worker per CPU, any other positive
integer is used as-is.  Results are merged in submission order, so output
is identical whatever the pool size.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def worker_count() -> int:
    raw = os.environ.get("QHOPF_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    if value == 0:
        return os.cpu_count() or 1
    return max(1, value)


def run_thunks(thunks: Sequence[Callable[[], T]], count: int | None = None) -> list[T]:
    if count is None:
        count = worker_count()
    if count <= 1 or len(thunks) <= 1:
        return [thunk() for thunk in thunks]
    with ThreadPoolExecutor(max_workers=min(count, len(thunks))) as pool:
        futures = [pool.submit(thunk) for thunk in thunks]
        return [future.result() for future in futures]
