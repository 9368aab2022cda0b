"""Hypothesis strategies for small families."""

from __future__ import annotations

from hypothesis import strategies as st

from boolimg.family import CubeSpace, SetFamily


@st.composite
def cube_families(draw, max_coords: int = 4, max_points: int = 8):
    """Coordinate families of random point sets in a small cube."""
    k = draw(st.integers(1, max_coords))
    vecs = draw(
        st.lists(st.integers(0, (1 << k) - 1), min_size=1, max_size=min(max_points, 1 << k), unique=True)
    )
    space = CubeSpace.from_vectors([format(v, f"0{k}b") for v in vecs])
    return SetFamily.coordinates(space)


@st.composite
def ground_families(draw, max_points: int = 6, max_sets: int = 4):
    """Arbitrary named subsets of a small ground, duplicates and trivial sets allowed."""
    n = draw(st.integers(1, max_points))
    k = draw(st.integers(1, max_sets))
    masks = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=k, max_size=k))
    ids = [f"p{i}" for i in range(n)]
    # the points of a ground family need distinct vectors; index bits make them so
    width = max(1, (n - 1).bit_length())
    space = CubeSpace.from_vectors([format(i, f"0{width}b") for i in range(n)], None, ids)
    return SetFamily(space, tuple(f"S{i}" for i in range(k)), tuple(masks))


def laminar_masks(rng, n_points: int, n_sets: int) -> list[int]:
    """Random comparable-or-disjoint nonempty sets; repeats allowed."""
    sets: list[int] = []
    while len(sets) < n_sets:
        m = rng.randrange(1, 1 << n_points)
        if all(not (m & s) or not (m & ~s) or not (s & ~m) for s in sets):
            sets.append(m)
    return sets
