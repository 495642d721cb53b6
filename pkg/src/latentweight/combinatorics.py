"""Lexicographic k-subsets of range(n), lazily or in rank-addressed blocks."""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterator

import numpy as np


def subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of ``range(n)`` in lexicographic order, one at a time."""
    return itertools.combinations(range(n), k)


def count(n: int, k: int) -> int:
    return comb(n, k)


def _prefix_tables(n: int, k: int) -> list[np.ndarray]:
    # cum[j][x] = number of subsets whose j-th element is < x, given the
    # (j-1)-th element lies below all those x; offsets are taken differentially.
    tables = []
    for j in range(k):
        sizes = np.array([comb(n - 1 - x, k - 1 - j) if x < n else 0 for x in range(n)], dtype=np.int64)
        tables.append(np.concatenate([[0], np.cumsum(sizes)]))
    return tables


def unrank(ranks, n: int, k: int, _tables=None) -> np.ndarray:
    """Lexicographic subsets with the given ranks, as an (m, k) int array."""
    ranks = np.asarray(ranks, dtype=np.int64).copy()
    tables = _tables if _tables is not None else _prefix_tables(n, k)
    out = np.empty((ranks.size, k), dtype=np.int64)
    lo = np.zeros(ranks.size, dtype=np.int64)
    for j in range(k):
        cum = tables[j]
        base = cum[lo]
        x = np.searchsorted(cum, ranks + base, side="right") - 1
        ranks -= cum[x] - base
        out[:, j] = x
        lo = x + 1
    return out


def rank_blocks(n: int, k: int, block: int, start: int = 0, stop: int | None = None) -> Iterator[np.ndarray]:
    """Yield consecutive (m, k) arrays covering ranks ``[start, stop)``."""
    total = comb(n, k)
    stop = total if stop is None else min(stop, total)
    tables = _prefix_tables(n, k)
    for a in range(start, stop, block):
        yield unrank(np.arange(a, min(a + block, stop)), n, k, tables)


def split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into at most ``parts`` contiguous nonempty ranges."""
    parts = max(1, min(parts, total))
    edges = [total * i // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b > a]
