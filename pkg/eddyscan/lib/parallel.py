"""Thread pool helper for Eddyscan

Description:
------------

Candidates and eddies are processed independently of each other. numpy and
scipy release the GIL in their inner loops, so a thread pool gives a useful
speedup without copying frames between processes.
"""

# Standard library imports
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """Map over items, in parallel if workers > 1, keeping the order of the items

    Args:
        func:     Function applied to each item.
        items:    Items to process.
        workers:  Number of threads, 1 runs in the calling thread.

    Returns:
        Results in the order of the items.
    """
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
