from __future__ import annotations

from itertools import permutations, product

import pytest

from boolimg.sweep import count_small_families, small_families


def brute_orbits(k: int, n: int) -> int:
    """Count k x n 0/1 matrices with distinct rows and columns up to row and column permutations."""
    seen = set()
    for flat in product((0, 1), repeat=k * n):
        rows = [flat[i * n:(i + 1) * n] for i in range(k)]
        cols = list(zip(*rows))
        if len(set(rows)) < k or len(set(cols)) < n:
            continue
        best = min(
            tuple(sorted(tuple(rows[r][c] for c in cp) for r in range(k)))
            for cp in permutations(range(n))
        )
        seen.add(best)
    return len(seen)


@pytest.mark.parametrize("max_points, max_sets", [(1, 1), (2, 2), (3, 2), (3, 3), (4, 3)])
def test_orbit_count_matches_brute_force(max_points, max_sets):
    expected = sum(
        brute_orbits(k, n) for k in range(1, max_sets + 1) for n in range(1, min(max_points, 1 << k) + 1)
    )
    assert count_small_families(max_points, max_sets) == expected


def test_families_are_well_formed():
    seen = set()
    for sp, fam in small_families(4, 3):
        assert fam.is_coordinate_family()
        assert fam.n_distinct == len(fam)
        key = (sp.n_coords, sp.bits)
        assert key not in seen
        seen.add(key)
    assert len(seen) == count_small_families(4, 3)


def test_sweep_is_deterministic():
    first = [sp.bits for sp, _ in small_families(3, 3)]
    assert first == [sp.bits for sp, _ in small_families(3, 3)]
