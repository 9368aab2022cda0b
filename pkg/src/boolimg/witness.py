"""Connected witness complexes and exact pseudoclopen arithmetic on them.

For a point set ``L`` in the cube ``2^I`` the witness ``K`` is ``L`` plus
every axis-parallel segment joining two points of ``L`` that differ in one
coordinate.  Cells are numbered with the points first and the open segments
after them, and a region of ``K`` is a bitset over cells.  Every region
built from the canonical pseudoclopens is constant on each open segment
(on a coordinate-``k`` segment ``y_k`` ranges over ``(0, 1)`` while the
other coordinates are fixed bits), so these bitsets are exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import NamedTuple, Sequence

from .decide import PartitionReport, is_realizable, verify_partition_property
from .errors import PostconditionError
from .family import CubeSpace, SetFamily


@dataclass(frozen=True)
class Segment:
    """Open segment between ``hi`` and ``lo`` (point indices) along coordinate ``coord``.

    Coordinates that agree on every point move together, so the endpoints
    differ exactly in ``coord`` and its twins; ``coord`` is the first of them.
    """

    hi: int
    lo: int
    coord: int


@dataclass(frozen=True)
class WitnessComplex:
    space: CubeSpace
    segments: tuple[Segment, ...]

    def __post_init__(self) -> None:
        seen = set()
        masks = self.space.coord_masks
        for s in self.segments:
            b_hi, b_lo = self.space.bits[s.hi], self.space.bits[s.lo]
            diff = [i for i in range(self.space.n_coords) if b_hi[i] != b_lo[i]]
            if not 0 <= s.coord < self.space.n_coords:
                raise ValueError(f"segment coordinate {s.coord} out of range")
            twins = [i for i in range(self.space.n_coords) if masks[i] == masks[s.coord]]
            if diff != twins or diff[0] != s.coord or b_hi[s.coord] != "1":
                raise ValueError(
                    f"segment {self.space.point_ids[s.lo]}-{self.space.point_ids[s.hi]} "
                    f"does not run along coordinate {self.space.coord_labels[s.coord]!r}"
                )
            pair = (s.hi, s.lo)
            if pair in seen:
                raise ValueError("segment listed twice")
            seen.add(pair)

    @property
    def n_cells(self) -> int:
        return self.space.n_points + len(self.segments)

    @property
    def universe(self) -> int:
        return (1 << self.n_cells) - 1

    def segment_cell(self, k: int) -> int:
        return self.space.n_points + k

    def cell_label(self, cell: int) -> str:
        n = self.space.n_points
        if cell < n:
            return self.space.point_ids[cell]
        s = self.segments[cell - n]
        return f"({self.space.point_ids[s.lo]},{self.space.point_ids[s.hi]})"

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.space.n_points)]
        for s in self.segments:
            adj[s.hi].append(s.lo)
            adj[s.lo].append(s.hi)
        return adj


def build_witness(space: CubeSpace, family: SetFamily | None = None) -> WitnessComplex:
    """All segments between points of ``space`` that differ in one coordinate class.

    A class is a maximal set of coordinates with equal columns, that is one
    distinct set of the coordinate family.  When ``family`` is given it must
    be the coordinate family of ``space``; if it is realizable the complex
    is checked to be connected.
    """
    if family is not None and (family.space != space or not family.is_coordinate_family()):
        raise ValueError("family is not the coordinate family of the space")
    groups: dict[int, list[int]] = {}
    for i, m in enumerate(space.coord_masks):
        groups.setdefault(m, []).append(i)
    pos = {b: p for p, b in enumerate(space.bits)}
    segs = []
    for p, b in enumerate(space.bits):
        for cls in groups.values():
            if b[cls[0]] == "1":
                low = list(b)
                for i in cls:
                    low[i] = "0"
                q = pos.get("".join(low))
                if q is not None:
                    segs.append(Segment(p, q, cls[0]))
    w = WitnessComplex(space, tuple(segs))
    if family is not None and len(family) and is_realizable(family).realizable:
        if len(witness_components(w)) != 1:
            raise PostconditionError("witness of a realizable family is disconnected")
    return w


def witness_components(w: WitnessComplex) -> list[tuple[int, ...]]:
    """Connected components of the complex as sorted point-index tuples."""
    seen = [False] * w.space.n_points
    comps = []
    for start in range(w.space.n_points):
        if seen[start]:
            continue
        seen[start] = True
        comp, stack = [], [start]
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in w.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    return comps


@dataclass(frozen=True)
class Pseudoclopen:
    """A pair (closed part, open part) of cell regions with closed inside open."""

    closed: int
    open: int
    universe: int

    def __post_init__(self) -> None:
        if self.closed & ~self.open:
            raise ValueError("closed part is not contained in the open part")

    def part(self, sign: str) -> int:
        if sign == "+":
            return self.open
        if sign == "-":
            return self.closed
        raise ValueError(f"part selector must be '+' or '-', got {sign!r}")

    @property
    def boundary(self) -> int:
        return self.open & ~self.closed

    def is_regular(self, w: WitnessComplex) -> bool:
        """Closed part is closed and open part is open, read off the cell structure."""
        for k, s in enumerate(w.segments):
            cell = 1 << w.segment_cell(k)
            ends = (1 << s.hi) | (1 << s.lo)
            if self.closed & cell and self.closed & ends != ends:
                return False
            if self.open & ends and not self.open & cell:
                return False
        return True


def canonical_pseudoclopens(w: WitnessComplex) -> list[Pseudoclopen]:
    """Per coordinate ``i``: closed part ``{y : y_i = 1}``, open part ``{y : y_i > 0}``."""
    sp = w.space
    out = []
    for i in range(sp.n_coords):
        col = sp.coord_masks[i]
        closed = opened = col
        for k, s in enumerate(w.segments):
            cell = 1 << w.segment_cell(k)
            if sp.coord_masks[s.coord] == col:
                opened |= cell
            elif sp.bits[s.lo][i] == "1":
                closed |= cell
                opened |= cell
        out.append(Pseudoclopen(closed, opened, w.universe))
    return out


def literal_pseudoclopens(w: WitnessComplex) -> list[Pseudoclopen]:
    """Per coordinate: the point set ``F_i`` itself as closed part, ``{y : y_i > 0}`` as open part.

    Kept as a regression reading; it breaks the isomorphism on small
    examples such as ``{00, 01, 11}``.
    """
    return [
        Pseudoclopen(w.space.coord_masks[i], pc.open, pc.universe)
        for i, pc in enumerate(canonical_pseudoclopens(w))
    ]


class Poly:
    """Boolean polynomial in variables ``x0, x1, ...``.

    Build with ``var(i)`` and the operators ``&``, ``|``, ``~`` and ``-``
    (``p - q`` is ``p & ~q``).
    """

    def __and__(self, other: Poly) -> Poly:
        return And(self, other)

    def __or__(self, other: Poly) -> Poly:
        return Or(self, other)

    def __invert__(self) -> Poly:
        return Not(self)

    def __sub__(self, other: Poly) -> Poly:
        return And(self, Not(other))

    def arity(self) -> int:
        raise NotImplementedError

    def evaluate(self, sets: Sequence[int], universe: int) -> int:
        raise NotImplementedError

    def pair(self, args: Sequence[Pseudoclopen], universe: int) -> tuple[int, int]:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Var(Poly):
    index: int

    def arity(self) -> int:
        return self.index + 1

    def evaluate(self, sets, universe):
        return sets[self.index]

    def pair(self, args, universe):
        a = args[self.index]
        return a.closed, a.open

    def __repr__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True, eq=False)
class Not(Poly):
    arg: Poly

    def arity(self) -> int:
        return self.arg.arity()

    def evaluate(self, sets, universe):
        return universe & ~self.arg.evaluate(sets, universe)

    def pair(self, args, universe):
        closed, opened = self.arg.pair(args, universe)
        return universe & ~opened, universe & ~closed

    def __repr__(self) -> str:
        return f"~{self.arg!r}"


@dataclass(frozen=True, eq=False)
class And(Poly):
    left: Poly
    right: Poly

    def arity(self) -> int:
        return max(self.left.arity(), self.right.arity())

    def evaluate(self, sets, universe):
        return self.left.evaluate(sets, universe) & self.right.evaluate(sets, universe)

    def pair(self, args, universe):
        c1, o1 = self.left.pair(args, universe)
        c2, o2 = self.right.pair(args, universe)
        return c1 & c2, o1 & o2

    def __repr__(self) -> str:
        return f"({self.left!r} & {self.right!r})"


@dataclass(frozen=True, eq=False)
class Or(Poly):
    left: Poly
    right: Poly

    def arity(self) -> int:
        return max(self.left.arity(), self.right.arity())

    def evaluate(self, sets, universe):
        return self.left.evaluate(sets, universe) | self.right.evaluate(sets, universe)

    def pair(self, args, universe):
        c1, o1 = self.left.pair(args, universe)
        c2, o2 = self.right.pair(args, universe)
        return c1 | c2, o1 | o2

    def __repr__(self) -> str:
        return f"({self.left!r} | {self.right!r})"


def var(i: int) -> Var:
    return Var(i)


def _universe_of(args: Sequence[Pseudoclopen]) -> int:
    if not args:
        raise ValueError("no arguments")
    u = args[0].universe
    if any(a.universe != u for a in args):
        raise ValueError("arguments live on different complexes")
    return u


def poly_pseudoclopen(poly: Poly, args: Sequence[Pseudoclopen]) -> Pseudoclopen:
    """Extend ``poly`` to pseudoclopens: complement swaps and complements the parts."""
    if poly.arity() > len(args):
        raise ValueError(f"polynomial uses {poly.arity()} variables, got {len(args)} arguments")
    u = _universe_of(args)
    closed, opened = poly.pair(args, u)
    return Pseudoclopen(closed, opened, u)


def star_holds(poly: Poly, args: Sequence[Pseudoclopen]) -> bool:
    """``poly(a_1^s1, ..., a_n^sn)`` is empty for all ``2^n`` sign choices."""
    if poly.arity() > len(args):
        raise ValueError(f"polynomial uses {poly.arity()} variables, got {len(args)} arguments")
    u = _universe_of(args)
    for signs in product((0, 1), repeat=len(args)):
        sets = [a.open if s else a.closed for a, s in zip(args, signs)]
        if poly.evaluate(sets, u):
            return False
    return True


def region_empty(
    w: WitnessComplex,
    positives: Sequence[tuple[Pseudoclopen, str]],
    negatives: Sequence[tuple[Pseudoclopen, str]],
) -> bool:
    """Exact emptiness of ``/\\ positives - \\/ negatives`` over the cells of ``w``."""
    region = w.universe
    for pc, sign in positives:
        region &= pc.part(sign)
    for pc, sign in negatives:
        region &= ~pc.part(sign)
    return region == 0


@dataclass(frozen=True)
class IsomorphismReport:
    """Outcome of checking both implications of the isomorphism condition.

    ``violation`` is ``(a_names, b_names, direction)`` for the first failing
    tuple.  ``connected`` records whether the complex is connected; it is
    reported alongside and does not affect ``verdict``.
    """

    verdict: bool
    max_arity: int
    checked: int
    connected: bool
    violation: tuple[tuple[str, ...], tuple[str, ...], int] | None = None

    def to_dict(self) -> dict:
        v = self.violation
        return {
            "verdict": self.verdict,
            "max_arity": self.max_arity,
            "checked": self.checked,
            "connected": self.connected,
            "violation": {"a": list(v[0]), "b": list(v[1]), "direction": v[2]} if v else None,
        }


def verify_isomorphism(
    w: WitnessComplex,
    family: SetFamily,
    max_arity: int | None = None,
    phi: Sequence[Pseudoclopen] | None = None,
) -> IsomorphismReport:
    """Check the isomorphism condition between ``family`` and ``phi`` (canonical by default).

    Tuples are disjoint lists of distinct sets, enumerated by total size,
    then by combination, then by the bitmask of which chosen sets go to the
    intersected side.
    """
    if family.space != w.space or not family.is_coordinate_family():
        raise ValueError("coordinate mismatch between family and witness")
    n = family.n_distinct
    if max_arity is None:
        max_arity = n
    if not 1 <= max_arity <= n:
        raise ValueError(f"max_arity must be between 1 and {n}, got {max_arity}")
    if phi is None:
        phi = canonical_pseudoclopens(w)
    reps = [g[0] for g in family.classes]
    sets = [family.masks[i] for i in reps]
    images = [phi[i] for i in reps]
    names = family.class_names
    full, universe = family.space.full, w.universe
    connected = len(witness_components(w)) == 1
    checked = 0
    for k in range(1, max_arity + 1):
        for combo in combinations(range(n), k):
            for split in range(1 << k):
                a = [combo[t] for t in range(k) if split >> t & 1]
                b = [combo[t] for t in range(k) if not split >> t & 1]
                checked += 1
                plain = full
                for j in a:
                    plain &= sets[j]
                for j in b:
                    plain &= ~sets[j]
                wide, narrow = universe, universe
                for j in a:
                    wide &= images[j].open
                    narrow &= images[j].closed
                for j in b:
                    wide &= ~images[j].closed
                    narrow &= ~images[j].open
                direction = 0
                if not plain and wide:
                    direction = 1
                elif not narrow and plain:
                    direction = 2
                if direction:
                    v = (tuple(names[j] for j in a), tuple(names[j] for j in b), direction)
                    return IsomorphismReport(False, max_arity, checked, connected, v)
    return IsomorphismReport(True, max_arity, checked, connected)


class Decomposition(NamedTuple):
    """Pieces of member indices aligned with ``markers``; piece 0 also takes untouched members."""

    pieces: tuple[tuple[int, ...], ...]
    markers: tuple[str, ...]
    path: tuple[str, ...]
    report: PartitionReport


def shortest_path(w: WitnessComplex, x: int, y: int) -> list[int] | None:
    """Shortest point path from ``x`` to ``y``, lexicographically least by point id."""
    ids = w.space.point_ids
    dist = {y: 0}
    queue = deque([y])
    while queue:
        v = queue.popleft()
        for u in w.adjacency[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    if x not in dist:
        return None
    path = [x]
    while path[-1] != y:
        v = path[-1]
        path.append(min((u for u in w.adjacency[v] if dist.get(u) == dist[v] - 1), key=lambda u: ids[u]))
    return path


def decompose_along_path(w: WitnessComplex, family: SetFamily, x: str, y: str) -> Decomposition:
    """Split the family by where its boundary regions first meet a path from x to y.

    Markers are ``x``, the midpoints of the path's segments in order, and
    ``y``.  A member whose boundary ``phi(a)+ - phi(a)-`` meets the path
    goes to the piece of the first marker inside that boundary; every other
    member goes to piece 0.
    """
    if family.space != w.space or not family.is_coordinate_family():
        raise ValueError("coordinate mismatch between family and witness")
    px, py = w.space.point(x), w.space.point(y)
    if px == py:
        raise ValueError("x and y must differ")
    if not is_realizable(family).realizable:
        raise ValueError("family is not realizable")
    path = shortest_path(w, px, py)
    if path is None:
        raise PostconditionError("no path between the points in a realizable witness")
    seg_cell = {}
    for k, s in enumerate(w.segments):
        seg_cell[(s.hi, s.lo)] = seg_cell[(s.lo, s.hi)] = w.segment_cell(k)
    markers = [px] + [seg_cell[(u, v)] for u, v in zip(path, path[1:])] + [py]
    phi = canonical_pseudoclopens(w)
    pieces: list[list[int]] = [[] for _ in markers]
    for i, pc in enumerate(phi):
        slot = next((m for m, cell in enumerate(markers) if pc.boundary >> cell & 1), 0)
        pieces[slot].append(i)
    frozen = tuple(tuple(p) for p in pieces)
    report = verify_partition_property(family, frozen, x, y)
    if not report.holds:
        raise PostconditionError(f"decomposition fails the partition property: {report.first_failure}")
    return Decomposition(
        frozen,
        tuple(w.cell_label(c) for c in markers),
        tuple(w.space.point_ids[p] for p in path),
        report,
    )
