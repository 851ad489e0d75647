"""Deterministic chunked execution for prime-range scans.

Scans split their prime list into contiguous ascending chunks; results are
merged so that the report is a pure function of the inputs, never of the
chunk count. Worker pools are persistent (one per worker count) and fork
based; if the environment cannot fork, the same chunks run sequentially and
produce identical output.
"""

from __future__ import annotations

import atexit
from concurrent.futures import ProcessPoolExecutor

_POOLS: dict[int, ProcessPoolExecutor] = {}
_BROKEN = False


def _shutdown():
    for pool in _POOLS.values():
        pool.shutdown(cancel_futures=True)
    _POOLS.clear()


atexit.register(_shutdown)


def split_chunks(items: list, parts: int) -> list[list]:
    """Split into at most `parts` contiguous chunks of near-equal size."""
    if not items:
        return [[]]
    parts = max(1, min(parts, len(items)))
    base, extra = divmod(len(items), parts)
    chunks, start = [], 0
    for i in range(parts):
        n = base + (1 if i < extra else 0)
        chunks.append(items[start : start + n])
        start += n
    return chunks


def map_chunks(fn, tasks: list[tuple], workers: int) -> list:
    """Apply a module-level function over task tuples, preserving task order."""
    global _BROKEN
    if workers <= 1 or len(tasks) <= 1 or _BROKEN:
        return [fn(*t) for t in tasks]
    try:
        pool = _POOLS.get(workers)
        if pool is None:
            import multiprocessing as mp

            pool = ProcessPoolExecutor(
                max_workers=workers, mp_context=mp.get_context("fork")
            )
            _POOLS[workers] = pool
        futures = [pool.submit(fn, *t) for t in tasks]
        return [f.result() for f in futures]
    except Exception:
        # No usable process pool here (restricted sandbox, missing fork):
        # run the identical chunks in-process. Merge logic is unchanged, so
        # output bytes are unchanged.
        _BROKEN = True
        return [fn(*t) for t in tasks]
