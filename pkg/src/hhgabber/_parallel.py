"""Order-preserving parallel map capped by ``HHGABBER_THREADS``."""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "HHGABBER_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items):
    """``list(map(fn, items))``; results are identical for any thread count."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
