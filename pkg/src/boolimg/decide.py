"""Decision predicates and greedy extractions on finite families.

Everything works on the deduplicated view of a family: equal members form
one class and count as a single set.  Enumerations over subfamilies or
partitions run in increasing bitmask order over class indices, so the first
violation reported is always the least one in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .atomgraph import build_graph, components
from .errors import BoundExceeded, PostconditionError
from .family import SetFamily, atoms_of, bits_of, is_independent

DEFAULT_SUBFAMILY_BOUND = 16
DEFAULT_PARTITION_BOUND = 20


@dataclass(frozen=True)
class RealizabilityReport:
    realizable: bool
    component_count: int
    method: str
    obstruction: tuple[str, str] | None = None
    subfamily: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.realizable,
            "method": self.method,
            "component_count": self.component_count,
            "obstruction": list(self.obstruction) if self.obstruction else None,
            "subfamily": list(self.subfamily) if self.subfamily is not None else None,
        }


def _point_keys(family: SetFamily) -> list[int]:
    """Per point, the bitset of classes containing it."""
    keys = [0] * family.space.n_points
    for c, m in enumerate(family.class_masks):
        for p in bits_of(m):
            keys[p] |= 1 << c
    return keys


def _connectivity(family: SetFamily, classes: Sequence[int]) -> tuple[int, tuple[str, str] | None]:
    graph = build_graph(family, [family.classes[c][0] for c in classes])
    comps = components(graph)
    if len(comps) <= 1:
        return len(comps), None
    first, second = graph.vertices[comps[0][0]], graph.vertices[comps[1][0]]
    return len(comps), (first.label(family), second.label(family))


def is_realizable(family: SetFamily) -> RealizabilityReport:
    """Single connectivity check of ``gr`` on the whole deduplicated family.

    Removing a set maps ``gr(F)`` onto ``gr(F - {a})`` without breaking
    edges, so connectivity of the full graph already covers every
    subfamily.
    """
    if len(family) == 0:
        raise ValueError("empty family")
    count, obstruction = _connectivity(family, range(family.n_distinct))
    return RealizabilityReport(count <= 1, count, "full-family", obstruction)


def is_realizable_exhaustive(family: SetFamily, bound: int = DEFAULT_SUBFAMILY_BOUND) -> RealizabilityReport:
    """Check ``gr`` of every nonempty subfamily; reports the first disconnected one."""
    n = family.n_distinct
    if n == 0:
        raise ValueError("empty family")
    if n > bound:
        raise BoundExceeded(f"{n} distinct sets exceed the subfamily bound {bound}")
    for sub in range(1, 1 << n):
        classes = bits_of(sub)
        count, obstruction = _connectivity(family, classes)
        if count > 1:
            names = tuple(family.class_names[c] for c in classes)
            return RealizabilityReport(False, count, "exhaustive", obstruction, names)
    count, _ = _connectivity(family, range(n))
    return RealizabilityReport(True, count, "exhaustive")


class Irredundancy(NamedTuple):
    irredundant: bool
    violation: int | None  # member index lying in the algebra of the others


def is_irredundant(family: SetFamily) -> Irredundancy:
    full = family.space.full
    cm = family.class_masks
    for c, m in enumerate(cm):
        others = [x for k, x in enumerate(cm) if k != c]
        if all(not (a & m) or a & m == a for a in atoms_of(others, full)):
            return Irredundancy(False, family.classes[c][0])
    return Irredundancy(True, None)


class StrongIrredundancy(NamedTuple):
    strongly_irredundant: bool
    partition: tuple[tuple[int, ...], tuple[int, ...]] | None  # member indices
    common: int | None  # nontrivial point set in both algebras


def _find(parent: list[int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def _common_element(keys: Sequence[int], left: int, right: int) -> int | None:
    """A nontrivial set in both algebras generated by the class blocks, or None.

    Atoms of the two blocks are joined when they share a point; the meet of
    the algebras is trivial exactly when that bipartite graph is connected.
    """
    ids: dict[tuple[int, int], int] = {}
    parent: list[int] = []
    point_nodes = []
    for k in keys:
        a, b = ("L", k & left), ("R", k & right)
        for node in (a, b):
            if node not in ids:
                ids[node] = len(parent)
                parent.append(len(parent))
        ra, rb = _find(parent, ids[a]), _find(parent, ids[b])
        if ra != rb:
            parent[ra] = rb
        point_nodes.append(ids[a])
    root = _find(parent, point_nodes[0])
    common = 0
    for p, node in enumerate(point_nodes):
        if _find(parent, node) == root:
            common |= 1 << p
    if common == (1 << len(keys)) - 1:
        return None
    return common


def is_strongly_irredundant(family: SetFamily, bound: int = DEFAULT_PARTITION_BOUND) -> StrongIrredundancy:
    """Every two-block partition of the distinct sets generates algebras meeting trivially.

    Partitions suffice: for disjoint subfamilies, enlarging either side to a
    partition only enlarges the generated algebras.
    """
    n = family.n_distinct
    if n > bound:
        raise BoundExceeded(f"{n} distinct sets exceed the partition bound {bound}")
    if n <= 1:
        return StrongIrredundancy(True, None, None)
    keys = _point_keys(family)
    all_classes = (1 << n) - 1
    # the last class always sits in the second block
    for left in range(1 << (n - 1)):
        right = all_classes & ~left
        common = _common_element(keys, left, right)
        if common is not None:
            part = (
                tuple(family.classes[c][0] for c in bits_of(left)),
                tuple(family.classes[c][0] for c in bits_of(right)),
            )
            return StrongIrredundancy(False, part, common)
    return StrongIrredundancy(True, None, None)


def algebra_meet(family: SetFamily, left: Iterable[int], right: Iterable[int]) -> set[int]:
    """All point sets in both generated algebras, by direct enumeration.

    Exponential in the number of atoms; meant as a cross-check on small
    families.
    """
    full = family.space.full
    la = atoms_of([family.masks[i] for i in left], full)
    ra = atoms_of([family.masks[i] for i in right], full)
    right_algebra = set()
    for sel in range(1 << len(ra)):
        right_algebra.add(sum(ra[j] for j in bits_of(sel)))
    out = set()
    for sel in range(1 << len(la)):
        u = sum(la[j] for j in bits_of(sel))
        if u in right_algebra:
            out.add(u)
    return out


class PivotResult(NamedTuple):
    holds: bool
    failing: tuple[int, ...] | None  # member indices of the first subfamily without a pivot
    pivots: dict[tuple[int, ...], int] | None = None


def _has_pivot(keys: Sequence[int], class_masks: Sequence[int], sub: int) -> int | None:
    """A class ``a`` in ``sub`` with no nonempty atom of ``sub - {a}`` inside ``a``."""
    for c in bits_of(sub):
        rest = sub & ~(1 << c)
        m = class_masks[c]
        outside = {k & rest for p, k in enumerate(keys) if not m >> p & 1}
        if all((k & rest) in outside for p, k in enumerate(keys) if m >> p & 1):
            return c
    return None


def has_pivot_hereditarily(
    family: SetFamily, bound: int = DEFAULT_SUBFAMILY_BOUND, record: bool = False
) -> PivotResult:
    """Every nonempty subfamily has a member containing no nonempty set generated by the rest.

    With ``record=True`` the chosen pivot of each subfamily is returned,
    keyed by the member indices of the subfamily.
    """
    n = family.n_distinct
    if n > bound:
        raise BoundExceeded(f"{n} distinct sets exceed the subfamily bound {bound}")
    keys = _point_keys(family)
    pivots = {} if record else None
    for sub in range(1, 1 << n):
        c = _has_pivot(keys, family.class_masks, sub)
        members = tuple(family.classes[k][0] for k in bits_of(sub))
        if c is None:
            return PivotResult(False, members, pivots)
        if record:
            pivots[members] = family.classes[c][0]
    return PivotResult(True, None, pivots)


class Extraction(NamedTuple):
    selection: tuple[int, ...]
    rejected: tuple[int, ...]
    order: str = "input"


def _unions(masks: Sequence[int]) -> set[int]:
    out: set[int] = set()
    for m in masks:
        out |= {u | m for u in out}
        out.add(m)
    return out


def _chain_property(masks: Sequence[int], full: int) -> bool:
    """No ``a, b_1..b_n`` with ``b_1 | ... | b_n`` inside ``a`` and ``a - U b_i`` in the list.

    ``a`` also ranges over the whole space ``full``: without it a set and
    its complement could both be kept, and neither would then be a pivot.
    """
    present = set(masks)
    for a in {*masks, full}:
        subs = [b for b in masks if b != a and not b & ~a]
        for u in _unions(subs):
            if a & ~u in present:
                return False
    return True


def same_algebra(family: SetFamily, first: Iterable[int], second: Iterable[int]) -> bool:
    full = family.space.full
    a = atoms_of([family.masks[i] for i in first], full)
    b = atoms_of([family.masks[i] for i in second], full)
    return sorted(a) == sorted(b)


def extract_chain_disjoint(family: SetFamily) -> Extraction:
    """Greedy maximal subfamily for a family of pairwise comparable-or-disjoint sets.

    Members are offered in input order; one is kept when the kept sets still
    satisfy the chain property, read with the whole space as an extra top.  Repeats of an already kept set are skipped.
    The result generates the same algebra and is realizable; both are
    checked before returning.
    """
    masks = family.masks
    for i, m in enumerate(masks):
        if m == 0:
            raise ValueError(f"member {family.names[i]!r} is empty")
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            a, b = masks[i], masks[j]
            if a & b and a & ~b and b & ~a:
                raise ValueError(
                    f"members {family.names[i]!r} and {family.names[j]!r} are neither comparable nor disjoint"
                )
    kept: list[int] = []
    rejected: list[int] = []
    for i, m in enumerate(masks):
        if m in (masks[k] for k in kept):
            rejected.append(i)
            continue
        if _chain_property([masks[k] for k in kept] + [m], family.space.full):
            kept.append(i)
        else:
            rejected.append(i)
    if not same_algebra(family, kept, range(len(masks))):
        raise PostconditionError("extracted subfamily generates a different algebra")
    if kept and not is_realizable(family.subfamily(kept)).realizable:
        raise PostconditionError("extracted subfamily is not realizable")
    return Extraction(tuple(kept), tuple(rejected))


def extract_pi_sequence(family: SetFamily) -> Extraction:
    """Greedy sequence where each new set contains no nonempty set generated by earlier ones.

    Such a sequence has a pivot in every subfamily (its latest member), so
    the result is realizable; that is checked before returning.
    """
    full = family.space.full
    kept: list[int] = []
    rejected: list[int] = []
    for i, m in enumerate(family.masks):
        atoms = atoms_of([family.masks[k] for k in kept], full)
        if any(not a & ~m for a in atoms):
            rejected.append(i)
        else:
            kept.append(i)
    if kept:
        sub = family.subfamily(kept)
        if not has_pivot_hereditarily(sub, bound=max(DEFAULT_SUBFAMILY_BOUND, sub.n_distinct)).holds:
            raise PostconditionError("extracted sequence lacks a hereditary pivot")
        if not is_realizable(sub).realizable:
            raise PostconditionError("extracted sequence is not realizable")
    return Extraction(tuple(kept), tuple(rejected))


@dataclass(frozen=True)
class PieceVerdict:
    piece: int
    holds: bool
    independent: bool
    failing: tuple[tuple[str, ...], tuple[str, ...]] | None = None


@dataclass(frozen=True)
class PartitionReport:
    holds: bool
    x: str
    y: str
    pieces: tuple[PieceVerdict, ...] = field(default_factory=tuple)

    @property
    def first_failure(self) -> PieceVerdict | None:
        return next((p for p in self.pieces if not p.holds), None)

    def to_dict(self) -> dict:
        fail = self.first_failure
        return {
            "verdict": self.holds,
            "x": self.x,
            "y": self.y,
            "pieces": [
                {
                    "piece": p.piece,
                    "holds": p.holds,
                    "independent": p.independent,
                    "violating_partition": [list(p.failing[0]), list(p.failing[1])] if p.failing else None,
                }
                for p in self.pieces
            ],
            "first_failure": fail.piece if fail else None,
        }


def verify_partition_property(
    family: SetFamily,
    pieces: Sequence[Sequence[int]],
    x: str,
    y: str,
    bound: int = DEFAULT_PARTITION_BOUND,
) -> PartitionReport:
    """Check the separation property piece by piece.

    For each piece, every split into ``F`` (holding all sets containing both
    points) and ``H`` (holding all sets missing both) must leave
    ``/\\F - \\/H`` nonempty, and the separating sets of the piece must be
    independent.
    """
    seen = sorted(i for p in pieces for i in p)
    if seen != list(range(len(family))):
        raise ValueError("pieces do not partition the member indices")
    px, py = family.space.point(x), family.space.point(y)
    if px == py:
        raise ValueError("x and y must differ")
    full = family.space.full
    verdicts = []
    for k, piece in enumerate(pieces):
        classes = family.select_classes(piece) if piece else ()
        masks = [family.class_masks[c] for c in classes]
        names = [family.class_names[c] for c in classes]
        both_in = [j for j, m in enumerate(masks) if m >> px & 1 and m >> py & 1]
        both_out = [j for j, m in enumerate(masks) if not m >> px & 1 and not m >> py & 1]
        seps = [j for j in range(len(masks)) if j not in both_in and j not in both_out]
        if len(seps) > bound:
            raise BoundExceeded(f"piece {k} has {len(seps)} separators, bound {bound}")
        failing = None
        for choice in range(1 << len(seps)):
            f_side = both_in + [seps[t] for t in range(len(seps)) if choice >> t & 1]
            h_side = both_out + [seps[t] for t in range(len(seps)) if not choice >> t & 1]
            region = full
            for j in f_side:
                region &= masks[j]
            for j in h_side:
                region &= ~masks[j]
            if not region:
                failing = (tuple(names[j] for j in sorted(f_side)), tuple(names[j] for j in sorted(h_side)))
                break
        independent = is_independent(family, [family.classes[classes[j]][0] for j in seps])
        verdicts.append(PieceVerdict(k, failing is None and independent, independent, failing))
    return PartitionReport(all(v.holds for v in verdicts), x, y, tuple(verdicts))
