from __future__ import annotations

import sys
from contextlib import contextmanager


@contextmanager
def deep_recursion(limit: int = 100_000):
    """Temporarily raise the interpreter recursion limit.

    The recursive decompositions here go one frame per link, so nets with a
    few thousand links need more than the default 1000 frames.
    """
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)
