"""Small shared helpers."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import islice


def parallel_map(fn, items, *, threads: int = 1, chunk: int = 64):
    """Map ``fn`` over ``items`` preserving input order.

    With threads > 1 the work is dispatched to a thread pool in chunks and
    merged back in input order, so results are identical to the sequential
    run regardless of scheduling.
    """
    if threads <= 1:
        for item in items:
            yield fn(item)
        return
    it = iter(items)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            block = list(islice(it, chunk * threads))
            if not block:
                return
            yield from pool.map(fn, block)


def exact_rank(matrix) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    m = [list(map(int, row)) for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev_pivot = 1
    for c in range(cols):
        pivot_row = None
        for r in range(rank, rows):
            if m[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, rows):
            factor = m[r][c]
            for cc in range(c, cols):
                m[r][cc] = (m[r][cc] * p - factor * m[rank][cc]) // prev_pivot
        prev_pivot = p
        rank += 1
        if rank == rows:
            break
    return rank
