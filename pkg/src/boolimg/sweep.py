"""Exhaustive enumeration of small families up to relabeling.

A family of ``k`` distinct sets on ``n`` points with distinct membership
patterns is a ``k x n`` 0/1 matrix with distinct rows and distinct columns.
Relabeling points permutes columns and relabeling sets permutes rows; every
graph and decision property studied here is invariant under both.  The
enumerator yields one cube-form family per orbit.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator

import numpy as np

from .family import CubeSpace, SetFamily

_CHUNK = 20000


def _perm_tables(k: int) -> np.ndarray:
    """Row ``r`` maps a ``k``-bit column to its image under the ``r``-th bit permutation."""
    cols = np.arange(1 << k)
    tables = []
    for perm in permutations(range(k)):
        img = np.zeros_like(cols)
        for src, dst in enumerate(perm):
            img |= ((cols >> src) & 1) << dst
        tables.append(img)
    return np.array(tables, dtype=np.int64)


def _representatives(k: int, n: int) -> np.ndarray:
    """Sorted column tuples that are least in their orbit and have distinct rows."""
    combos = np.array(list(combinations(range(1 << k), n)), dtype=np.int64)
    if combos.size == 0:
        return combos.reshape(0, n)
    # distinct rows: row i read across the n columns
    rows = np.stack([((combos >> i) & 1) @ (1 << np.arange(n)) for i in range(k)], axis=1)
    srt = np.sort(rows, axis=1)
    distinct = np.all(srt[:, 1:] != srt[:, :-1], axis=1) if k > 1 else np.ones(len(combos), bool)
    combos = combos[distinct]
    weights = (1 << k) ** np.arange(n - 1, -1, -1, dtype=np.int64)
    own = combos @ weights
    tables = _perm_tables(k)
    keep = np.zeros(len(combos), dtype=bool)
    for start in range(0, len(combos), _CHUNK):
        chunk = combos[start:start + _CHUNK]
        mapped = np.sort(tables[:, chunk], axis=2)
        best = (mapped @ weights).min(axis=0)
        keep[start:start + _CHUNK] = best == own[start:start + _CHUNK]
    return combos[keep]


def small_families(max_points: int, max_sets: int) -> Iterator[tuple[CubeSpace, SetFamily]]:
    """One cube-form family per relabeling orbit, ``1..max_sets`` sets on ``1..max_points`` points."""
    for k in range(1, max_sets + 1):
        for n in range(1, min(max_points, 1 << k) + 1):
            for cols in _representatives(k, n):
                bits = [format(int(c), f"0{k}b")[::-1] for c in cols]
                space = CubeSpace.from_vectors(bits, [f"s{i}" for i in range(k)], [f"p{j}" for j in range(n)])
                yield space, SetFamily.coordinates(space)


def count_small_families(max_points: int, max_sets: int) -> int:
    return sum(
        len(_representatives(k, n))
        for k in range(1, max_sets + 1)
        for n in range(1, min(max_points, 1 << k) + 1)
    )
