from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def ordered_map(fn, items, workers: int | None = None) -> list:
    """Map preserving input order; ``workers`` <= 1 runs serially."""
    items = list(items)
    if not workers or workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
