"""
Ordered parallel map with a worker cap
Results always come back in input order, so output does not depend on the thread count
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    Apply fn to every item, optionally on a thread pool.

    Args:
        fn: function of one argument
        items: inputs
        threads: worker cap; 1 or less runs inline

    Returns:
        list of results in input order
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))
