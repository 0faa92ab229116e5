"""Deterministic thread-pool evaluation of independent simulation tasks.

The compiled integrator releases the GIL, so plain threads scale across
cores without pickling.  Results are always assembled in task index
order, making every reduction bit-reproducible regardless of the worker
count (set via the VSTIRAP_WORKERS environment variable; default: all
available cores).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

WORKERS_ENV = "VSTIRAP_WORKERS"


def worker_count(explicit: int | None = None) -> int:
    if explicit is not None:
        workers = explicit
    else:
        raw = os.environ.get(WORKERS_ENV)
        if raw is not None:
            try:
                workers = int(raw)
            except ValueError:
                raise ValueError(f"{WORKERS_ENV} must be an integer >= 1, got {raw!r}")
        else:
            workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def thread_map(fn, items, workers: int | None = None) -> list:
    """Map fn over items, preserving order; sequential when workers == 1."""
    n = worker_count(workers)
    items = list(items)
    if n == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
