"""Finite set families over points of a binary cube.

Subsets of a space's point set are plain Python ints used as bitsets: bit
``p`` is set when the point with index ``p`` belongs to the subset.  Every
function here is pure; spaces and families are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, NamedTuple, Sequence


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class CubeSpace:
    """A finite point set ``L`` inside the cube ``2^I``.

    ``bits[p]`` is the 0/1 string of point ``p`` over ``coord_labels``.
    """

    coord_labels: tuple[str, ...]
    point_ids: tuple[str, ...]
    bits: tuple[str, ...]

    def __post_init__(self) -> None:
        n = len(self.coord_labels)
        if not self.point_ids:
            raise ValueError("a cube space needs at least one point")
        if len(self.point_ids) != len(self.bits):
            raise ValueError("point_ids and bits differ in length")
        if len(set(self.coord_labels)) != n:
            raise ValueError("duplicate coordinate label")
        seen_ids: set[str] = set()
        seen_bits: dict[str, str] = {}
        for pid, b in zip(self.point_ids, self.bits):
            if pid in seen_ids:
                raise ValueError(f"duplicate point id {pid!r}")
            seen_ids.add(pid)
            if len(b) != n or set(b) - {"0", "1"}:
                raise ValueError(f"point {pid!r}: bad bit string {b!r} for {n} coordinates")
            if b in seen_bits:
                raise ValueError(f"points {seen_bits[b]!r} and {pid!r} share bit vector {b!r}")
            seen_bits[b] = pid

    @classmethod
    def from_vectors(
        cls,
        vectors: Iterable[Sequence[int] | str],
        coord_labels: Sequence[str] | None = None,
        point_ids: Sequence[str] | None = None,
    ) -> CubeSpace:
        """Build a space from 0/1 vectors; ids default to the bit strings."""
        bits = tuple(v if isinstance(v, str) else "".join(str(int(x)) for x in v) for v in vectors)
        if not bits:
            raise ValueError("a cube space needs at least one point")
        if coord_labels is None:
            coord_labels = [str(i + 1) for i in range(len(bits[0]))]
        if point_ids is None:
            point_ids = bits
        return cls(tuple(coord_labels), tuple(point_ids), bits)

    @property
    def n_points(self) -> int:
        return len(self.point_ids)

    @property
    def n_coords(self) -> int:
        return len(self.coord_labels)

    @property
    def full(self) -> int:
        """Bitset of all points."""
        return (1 << len(self.point_ids)) - 1

    @cached_property
    def coord_masks(self) -> tuple[int, ...]:
        """``coord_masks[i]`` is the set ``{x in L : x_i = 1}``."""
        masks = [0] * self.n_coords
        for p, b in enumerate(self.bits):
            for i, ch in enumerate(b):
                if ch == "1":
                    masks[i] |= 1 << p
        return tuple(masks)

    @cached_property
    def index(self) -> dict[str, int]:
        return {pid: p for p, pid in enumerate(self.point_ids)}

    def point(self, pid: str) -> int:
        try:
            return self.index[pid]
        except KeyError:
            raise KeyError(f"unknown point id {pid!r}") from None

    def subset(self, ids: Iterable[str]) -> int:
        """Bitset for a collection of point ids."""
        mask = 0
        for pid in ids:
            mask |= 1 << self.point(pid)
        return mask

    def ids_of(self, mask: int) -> list[str]:
        return [self.point_ids[p] for p in bits_of(mask)]


@dataclass(frozen=True)
class SetFamily:
    """An ordered, named list of subsets of a space's points.

    Duplicate members are kept as given; ``classes`` groups the indices of
    equal members and is what all graph and decision code works on.
    """

    space: CubeSpace
    names: tuple[str, ...]
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.names) != len(self.masks):
            raise ValueError("names and masks differ in length")
        if len(set(self.names)) != len(self.names):
            dup = next(n for n in self.names if self.names.count(n) > 1)
            raise ValueError(f"duplicate set name {dup!r}")
        full = self.space.full
        for name, m in zip(self.names, self.masks):
            if m & ~full or m < 0:
                raise ValueError(f"set {name!r} has points outside the space")

    @classmethod
    def coordinates(cls, space: CubeSpace) -> SetFamily:
        """The family of coordinate sets ``F_i = {x in L : x_i = 1}``."""
        return cls(space, space.coord_labels, space.coord_masks)

    def __len__(self) -> int:
        return len(self.masks)

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Member indices grouped by set equality, in first-occurrence order."""
        groups: dict[int, list[int]] = {}
        for i, m in enumerate(self.masks):
            groups.setdefault(m, []).append(i)
        return tuple(tuple(g) for g in groups.values())

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * len(self.masks)
        for c, members in enumerate(self.classes):
            for i in members:
                out[i] = c
        return tuple(out)

    @cached_property
    def class_masks(self) -> tuple[int, ...]:
        return tuple(self.masks[g[0]] for g in self.classes)

    @cached_property
    def class_names(self) -> tuple[str, ...]:
        return tuple(self.names[g[0]] for g in self.classes)

    @property
    def n_distinct(self) -> int:
        return len(self.classes)

    @property
    def duplicates(self) -> tuple[tuple[int, ...], ...]:
        """Classes holding more than one member index."""
        return tuple(g for g in self.classes if len(g) > 1)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown set name {name!r}") from None

    def is_coordinate_family(self) -> bool:
        return self.masks == self.space.coord_masks

    def select_classes(self, selection: Iterable[int] | None = None) -> tuple[int, ...]:
        """Distinct classes hit by a selection of member indices (all if None)."""
        if selection is None:
            return tuple(range(self.n_distinct))
        out = set()
        for i in selection:
            if not 0 <= i < len(self.masks):
                raise IndexError(f"member index {i} out of range")
            out.add(self.class_of[i])
        return tuple(sorted(out))

    def subfamily(self, selection: Iterable[int]) -> SetFamily:
        idx = list(selection)
        return SetFamily(self.space, tuple(self.names[i] for i in idx), tuple(self.masks[i] for i in idx))


@dataclass(frozen=True)
class Signature:
    """A vertex of the atom graph.

    ``key`` is a bitset over class indices of the family (the sets ``Y``);
    ``atom`` is the nonempty point set ``/\\Y minus \\/(F - Y)``.
    """

    key: int
    atom: int

    def classes(self) -> list[int]:
        return bits_of(self.key)

    def label(self, family: SetFamily) -> str:
        return "{" + ",".join(family.class_names[c] for c in bits_of(self.key)) + "}"


def atom_partition(class_masks: Sequence[int], n_points: int) -> dict[int, int]:
    """Map each signature key (over positions in ``class_masks``) to its atom."""
    keys = [0] * n_points
    for c, m in enumerate(class_masks):
        bit = 1 << c
        for p in bits_of(m):
            keys[p] |= bit
    atoms: dict[int, int] = {}
    for p, k in enumerate(keys):
        atoms[k] = atoms.get(k, 0) | (1 << p)
    return atoms


def _signatures(family: SetFamily, classes: Sequence[int]) -> list[Signature]:
    local = atom_partition([family.class_masks[c] for c in classes], family.space.n_points)
    out = []
    for lk, atom in local.items():
        key = 0
        for j in bits_of(lk):
            key |= 1 << classes[j]
        out.append(Signature(key, atom))
    out.sort(key=lambda s: s.key)
    return out


def signatures(family: SetFamily, selection: Iterable[int] | None = None) -> list[Signature]:
    """All signatures with nonempty atom for the selected members, sorted by key."""
    classes = family.select_classes(selection)
    if not classes:
        raise ValueError("empty selection")
    return _signatures(family, classes)


def atoms_of(masks: Iterable[int], full: int) -> list[int]:
    """Nonempty atoms of the Boolean algebra generated by ``masks`` inside ``full``."""
    atoms = [full] if full else []
    for m in masks:
        nxt = []
        for a in atoms:
            inside, outside = a & m, a & ~m
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        atoms = nxt
    return atoms


def in_algebra(candidate: int, masks: Iterable[int], full: int) -> bool:
    """True iff ``candidate`` is a union of atoms generated by ``masks``."""
    return all(not (a & candidate) or a & candidate == a for a in atoms_of(masks, full))


def in_generated_algebra(candidate: int, generators: Iterable[int], family: SetFamily) -> bool:
    """Membership of a point set in the subalgebra generated by some members."""
    return in_algebra(candidate, (family.masks[i] for i in generators), family.space.full)


def is_independent(family: SetFamily, selection: Sequence[int]) -> bool:
    """True iff all ``2^n`` Boolean atoms of the selected members are nonempty.

    Works on member indices, so a repeated member makes the selection
    dependent (the atom ``a minus a`` is empty).
    """
    masks = [family.masks[i] for i in selection]
    if 2 ** len(masks) > family.space.n_points:
        return False
    return len(atom_partition(masks, family.space.n_points)) == 2 ** len(masks)


def separators(family: SetFamily, x: str, y: str) -> tuple[int, ...]:
    """Member indices ``a`` with ``|a & {x, y}| = 1``."""
    px, py = family.space.point(x), family.space.point(y)
    if px == py:
        raise ValueError("separators need two distinct points")
    return tuple(i for i, m in enumerate(family.masks) if (m >> px & 1) != (m >> py & 1))


def separates_points(family: SetFamily) -> bool:
    """True iff every pair of points is split by some member."""
    return len(atom_partition(family.class_masks, family.space.n_points)) == family.space.n_points


class Canonical(NamedTuple):
    space: CubeSpace
    family: SetFamily
    collapsed: dict[str, tuple[str, ...]]


def canonicalize(ground: Sequence[str], sets: Sequence[tuple[str, Iterable[str]]]) -> Canonical:
    """Embed a ground set into ``2^G`` via ``x -> (1_G(x))_G``.

    Ground points with the same membership pattern collapse to one cube
    point, which keeps the first id; ``collapsed`` maps each kept id to the
    ids merged into it.
    """
    if not ground:
        raise ValueError("empty ground set")
    if len(set(ground)) != len(ground):
        dup = next(g for g in ground if list(ground).count(g) > 1)
        raise ValueError(f"duplicate ground point {dup!r}")
    names = [name for name, _ in sets]
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise ValueError(f"duplicate set name {dup!r}")
    pos = {g: i for i, g in enumerate(ground)}
    rows = [["0"] * len(sets) for _ in ground]
    for j, (name, members) in enumerate(sets):
        for m in members:
            if m not in pos:
                raise ValueError(f"set {name!r}: member {m!r} not in ground")
            rows[pos[m]][j] = "1"
    kept: dict[str, str] = {}
    merged: dict[str, list[str]] = {}
    for g, row in zip(ground, rows):
        b = "".join(row)
        if b in kept:
            merged[kept[b]].append(g)
        else:
            kept[b] = g
            merged[g] = []
    space = CubeSpace(tuple(names), tuple(kept.values()), tuple(kept.keys()))
    collapsed = {k: tuple(v) for k, v in merged.items() if v}
    return Canonical(space, SetFamily.coordinates(space), collapsed)


def cube_form(family: SetFamily) -> Canonical:
    """Re-embed a family's own space so that the family becomes coordinate sets."""
    sp = family.space
    return canonicalize(
        list(sp.point_ids),
        [(name, sp.ids_of(m)) for name, m in zip(family.names, family.masks)],
    )


def _join_labels(parts: Sequence[Sequence[str]]) -> list[str]:
    flat = [s for p in parts for s in p]
    if len(set(flat)) == len(flat):
        return flat
    return [f"{k}.{s}" for k, p in enumerate(parts) for s in p]


def product_family(inputs: Sequence[tuple[CubeSpace, SetFamily]]) -> tuple[CubeSpace, SetFamily]:
    """Product space with the family of cylinders ``pi_k^{-1}[a]``.

    Coordinates and set names are the disjoint union of the factors'; they
    are prefixed with the factor index only when they would collide.
    """
    if not inputs:
        raise ValueError("product of no factors")
    spaces = [s for s, _ in inputs]
    coords = _join_labels([s.coord_labels for s in spaces])
    names = _join_labels([f.names for _, f in inputs])
    ids, bits = [], []
    for combo in product(*(range(s.n_points) for s in spaces)):
        ids.append(",".join(s.point_ids[p] for s, p in zip(spaces, combo)))
        bits.append("".join(s.bits[p] for s, p in zip(spaces, combo)))
    space = CubeSpace(tuple(coords), tuple(ids), tuple(bits))
    combos = list(product(*(range(s.n_points) for s in spaces)))
    masks = []
    for k, (_, fam) in enumerate(inputs):
        for m in fam.masks:
            masks.append(sum(1 << q for q, combo in enumerate(combos) if m >> combo[k] & 1))
    return space, SetFamily(space, tuple(names), tuple(masks))
