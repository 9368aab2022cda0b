"""Example spaces and the finite-scale checks for trees and adequate families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .decide import is_realizable
from .errors import BoundExceeded, PostconditionError
from .family import CubeSpace, SetFamily, bits_of, is_independent, separates_points

SIGMA_BOUND = 16


# ---------------------------------------------------------------- fixtures


def gen_example5() -> tuple[CubeSpace, SetFamily]:
    """Vectors in ``{0,1}^5`` with a number of zeros other than three, and ``E_1..E_5``."""
    vecs = [f"{v:05b}" for v in range(32) if f"{v:05b}".count("0") != 3]
    space = CubeSpace.from_vectors(vecs, [f"E{i}" for i in range(1, 6)])
    return space, SetFamily.coordinates(space)


def gen_abc() -> tuple[CubeSpace, SetFamily]:
    """Three sets with ``A&B = B&C = A&C = {p0}``, a nontrivial common part."""
    space = CubeSpace(("A", "B", "C"), ("p0", "p1", "p2", "p3"), ("111", "100", "010", "001"))
    return space, SetFamily.coordinates(space)


def gen_chain3() -> tuple[CubeSpace, SetFamily]:
    """A chain ``a < b < c`` on four points: p0 in none, p3 in all."""
    space = CubeSpace(("a", "b", "c"), ("p0", "p1", "p2", "p3"), ("000", "001", "011", "111"))
    return space, SetFamily.coordinates(space)


def gen_l2() -> tuple[CubeSpace, SetFamily]:
    """``{00, 01, 11}`` over coordinates 1, 2."""
    space = CubeSpace.from_vectors(["00", "01", "11"])
    return space, SetFamily.coordinates(space)


def gen_triv1() -> tuple[CubeSpace, SetFamily]:
    """One nontrivial set on two points."""
    space = CubeSpace(("a",), ("p0", "p1"), ("0", "1"))
    return space, SetFamily.coordinates(space)


FIXTURES = {
    "example5": gen_example5,
    "abc": gen_abc,
    "chain3": gen_chain3,
    "l2": gen_l2,
    "triv1": gen_triv1,
}


# ------------------------------------------------------------- sigma spaces


def _weight_vectors(m: int, max_weight: int) -> list[str]:
    out = []
    for w in range(max_weight + 1):
        for support in combinations(range(m), w):
            out.append("".join("1" if i in support else "0" for i in range(m)))
    return out


def gen_sigma(n: int, m: int, bound: int = SIGMA_BOUND) -> tuple[CubeSpace, SetFamily]:
    """All 0/1 vectors of weight at most ``n`` over ``m`` coordinates, with the coordinate sets."""
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    if m > bound:
        raise BoundExceeded(f"m={m} exceeds the coordinate bound {bound}")
    space = CubeSpace.from_vectors(_weight_vectors(m, n))
    return space, SetFamily.coordinates(space)


def _support(bits: str) -> frozenset[int]:
    return frozenset(i for i, ch in enumerate(bits) if ch == "1")


def _points_with(space: CubeSpace, coords: Iterable[int]) -> int:
    mask = space.full
    for c in coords:
        mask &= space.coord_masks[c]
    return mask


def gen_sigma2_family(space: CubeSpace, check: bool = True) -> SetFamily:
    """Point-separating family for a subspace of ``sigma_2``.

    Takes ``E_g`` for every coordinate ``g`` whose unit vector lies in the
    space, and ``E_t`` for every pair ``t`` with ``1_t`` in the space and
    ``t`` not made of such coordinates.  With ``check`` the family is
    verified to separate points and to be realizable.
    """
    supports = [_support(b) for b in space.bits]
    for pid, s in zip(space.point_ids, supports):
        if len(s) > 2:
            raise ValueError(f"point {pid!r} has weight {len(s)} > 2")
    present = set(supports)
    singles = [g for g in range(space.n_coords) if frozenset([g]) in present]
    single_set = set(singles)
    pairs = sorted(tuple(sorted(s)) for s in present if len(s) == 2 and not s <= single_set)
    labels = space.coord_labels
    names = [f"E{labels[g]}" for g in singles] + [f"E{labels[a]}{labels[b]}" for a, b in pairs]
    masks = [_points_with(space, [g]) for g in singles] + [_points_with(space, t) for t in pairs]
    family = SetFamily(space, tuple(names), tuple(masks))
    if check:
        _check_generated(family)
    return family


def _check_generated(family: SetFamily) -> None:
    if not separates_points(family):
        raise PostconditionError("generated family does not separate points")
    if len(family) and not is_realizable(family).realizable:
        raise PostconditionError(f"generated family {list(family.names)} is not realizable")


def gen_sigma3_remark_family(
    space: CubeSpace,
    gamma1: Sequence[str],
    injection: dict[str, str],
    check: bool = True,
) -> SetFamily:
    """``E_g`` for ``g`` in ``gamma1`` and ``E_g | E_phi(g)`` for the remaining coordinates."""
    labels = space.coord_labels
    col = {lab: i for i, lab in enumerate(labels)}
    g1 = [col[g] for g in gamma1]
    rest = [i for i in range(space.n_coords) if i not in g1]
    for pid, b in zip(space.point_ids, space.bits):
        if b.count("1") > 3:
            raise ValueError(f"point {pid!r} has weight > 3")
    present = set(space.bits)
    for v in _weight_vectors(len(g1), 2):
        full = ["0"] * space.n_coords
        for j, ch in zip(g1, v):
            full[j] = ch
        if "".join(full) not in present:
            raise ValueError(f"space misses the sigma_2 point with support {sorted(labels[j] for j, ch in zip(g1, v) if ch == '1')}")
    targets = [injection.get(labels[i]) for i in rest]
    if any(t not in gamma1 for t in targets) or len(set(targets)) != len(targets):
        raise ValueError("injection must map the other coordinates injectively into gamma1")
    names = [f"E{labels[i]}" for i in g1] + [f"E{labels[i]}|E{t}" for i, t in zip(rest, targets)]
    masks = [space.coord_masks[i] for i in g1] + [
        space.coord_masks[i] | space.coord_masks[col[t]] for i, t in zip(rest, targets)
    ]
    family = SetFamily(space, tuple(names), tuple(masks))
    if check:
        _check_generated(family)
    return family


# ------------------------------------------------------- adequate families


@dataclass(frozen=True)
class AdequateSpec:
    """A subset-closed family on a finite ground.

    Give ``members`` (every set, checked for subset closure), ``maximal``
    (the family is their downward closure), or ``n`` with ``small`` (the
    allowed sets of size at most ``n``; a set belongs iff all its subsets of
    size at most ``n`` are allowed).
    """

    ground: tuple[str, ...]
    members: tuple[frozenset[str], ...] | None = None
    maximal: tuple[frozenset[str], ...] | None = None
    n: int | None = None
    small: tuple[frozenset[str], ...] | None = None

    def __post_init__(self) -> None:
        if sum(x is not None for x in (self.members, self.maximal, self.small)) != 1:
            raise ValueError("give exactly one of members, maximal, small")
        if (self.small is None) != (self.n is None):
            raise ValueError("n and small go together")
        gset = set(self.ground)
        for group in (self.members, self.maximal, self.small):
            for s in group or ():
                if not s <= gset:
                    raise ValueError(f"set {sorted(s)} leaves the ground")
        if self.small is not None:
            if any(len(s) > self.n for s in self.small):
                raise ValueError(f"small sets must have size at most {self.n}")
            small = set(self.small)
            for s in small:
                for r in range(len(s)):
                    for sub in combinations(sorted(s), r):
                        if frozenset(sub) not in small:
                            raise ValueError(f"spec not subset-closed: {sorted(s)} lacks subset {list(sub)}")
        if self.members is not None:
            mem = set(self.members)
            for s in mem:
                for g in s:
                    if s - {g} not in mem:
                        raise ValueError(f"spec not subset-closed: {sorted(s)} lacks subset {sorted(s - {g})}")

    @cached_property
    def sets(self) -> tuple[frozenset[str], ...]:
        """All member sets, ordered by size then by ground order."""
        order = {g: i for i, g in enumerate(self.ground)}
        if self.members is not None:
            found = set(self.members)
        elif self.maximal is not None:
            found = set()
            for s in self.maximal:
                items = sorted(s, key=order.get)
                for r in range(len(items) + 1):
                    found.update(frozenset(c) for c in combinations(items, r))
        else:
            small = set(self.small)
            found = set()
            for r in range(len(self.ground) + 1):
                for c in combinations(self.ground, r):
                    if all(frozenset(sub) in small for k in range(min(r, self.n) + 1) for sub in combinations(c, k)):
                        found.add(frozenset(c))
        return tuple(sorted(found, key=lambda s: (len(s), sorted(order[g] for g in s))))

    def __contains__(self, s: Iterable[str]) -> bool:
        return frozenset(s) in set(self.sets)

    def is_n_adequate(self, n: int) -> bool:
        """Membership of every ground subset equals membership of all its subsets of size at most ``n``."""
        fam = set(self.sets)
        for r in range(len(self.ground) + 1):
            for c in combinations(self.ground, r):
                small_ok = all(frozenset(sub) in fam for k in range(min(r, n) + 1) for sub in combinations(c, k))
                if small_ok != (frozenset(c) in fam):
                    return False
        return True


def gen_adequate_space(spec: AdequateSpec, check: bool = True) -> tuple[CubeSpace, SetFamily]:
    """Characteristic vectors of the members, with the coordinate sets."""
    ground = spec.ground
    vecs = ["".join("1" if g in s else "0" for g in ground) for s in spec.sets]
    space = CubeSpace.from_vectors(vecs, ground)
    family = SetFamily.coordinates(space)
    if check and not is_realizable(family).realizable:
        raise PostconditionError("adequate space family is not realizable")
    return space, family


@dataclass(frozen=True)
class HullReport:
    n: int
    samples: int
    violations: tuple[tuple[Fraction, ...], ...]
    reduction_ok: bool
    reduction_checked: int

    @property
    def ok(self) -> bool:
        return not self.violations and self.reduction_ok

    def to_dict(self) -> dict:
        return {
            "verdict": self.ok,
            "n": self.n,
            "samples": self.samples,
            "violations": [[str(c) for c in v] for v in self.violations],
            "reduction_ok": self.reduction_ok,
            "reduction_checked": self.reduction_checked,
        }


def random_convex_point(rng: random.Random, points: Sequence[Sequence[int]], denominator: int = 64) -> tuple[Fraction, ...]:
    """Exact convex combination of a random multiset of ``points``.

    Weights are random integers normalized to sum one; a random number of
    the drawn points get weight zero so that combinations near faces and
    vertices show up too.
    """
    k = rng.randint(1, len(points))
    chosen = [points[rng.randrange(len(points))] for _ in range(k)]
    weights = [rng.randint(0, denominator) for _ in chosen]
    if not any(weights):
        weights[rng.randrange(k)] = 1
    total = sum(weights)
    dim = len(points[0])
    return tuple(sum((Fraction(w, total) * p[i] for w, p in zip(weights, chosen)), Fraction(0)) for i in range(dim))


def check_hull_claim(spec: AdequateSpec, n: int, sample_count: int, seed: int, size_bound: int | None = None) -> HullReport:
    """Sample the convex hull of the space and test the threshold set for membership.

    Each sample ``x`` must have ``{g : x_g > 1 - 1/n}`` in the family.  The
    reduction ``A in family <=> /\\_{g in A} E_g nonempty <=> 1_A in L`` is
    checked for every ``A`` up to ``size_bound`` elements.
    """
    if n < 1 or not spec.is_n_adequate(n):
        raise ValueError(f"spec is not {n}-adequate")
    space, family = gen_adequate_space(spec, check=False)
    points = [[int(ch) for ch in b] for b in space.bits]
    threshold = 1 - Fraction(1, n)
    rng = random.Random(seed)
    members = set(spec.sets)
    violations = []
    for _ in range(sample_count):
        x = random_convex_point(rng, points)
        top = frozenset(g for g, v in zip(spec.ground, x) if v > threshold)
        if top not in members:
            violations.append(x)
    bound = len(spec.ground) if size_bound is None else size_bound
    vec_set = set(space.bits)
    checked = 0
    ok = True
    for r in range(bound + 1):
        for c in combinations(range(len(spec.ground)), r):
            checked += 1
            in_fam = frozenset(spec.ground[i] for i in c) in members
            nonempty = bool(_points_with(space, c))
            indicator = "".join("1" if i in c else "0" for i in range(len(spec.ground))) in vec_set
            if not in_fam == nonempty == indicator:
                ok = False
    return HullReport(n, sample_count, tuple(violations), ok, checked)


# -------------------------------------------------------------------- trees


@dataclass(frozen=True)
class FiniteTree:
    """Rooted tree given by parent links; ``nodes`` fixes the canonical order."""

    nodes: tuple[str, ...]
    parent: dict[str, str | None]

    def __post_init__(self) -> None:
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node id")
        if set(self.parent) != set(self.nodes):
            raise ValueError("parent map must cover exactly the nodes")
        roots = [t for t in self.nodes if self.parent[t] is None]
        if len(roots) != 1:
            raise ValueError(f"a tree needs exactly one root, found {len(roots)}")
        for t in self.nodes:
            p = self.parent[t]
            if p is not None and p not in self.parent:
                raise ValueError(f"node {t!r} has unknown parent {p!r}")
        for t in self.nodes:
            seen = {t}
            p = self.parent[t]
            while p is not None:
                if p in seen:
                    raise ValueError(f"cycle through node {t!r}")
                seen.add(p)
                p = self.parent[p]

    def __hash__(self) -> int:
        return hash(self.nodes)

    @classmethod
    def from_parents(cls, pairs: Sequence[tuple[str, str | None]]) -> FiniteTree:
        return cls(tuple(t for t, _ in pairs), {t: p for t, p in pairs})

    @property
    def root(self) -> str:
        return next(t for t in self.nodes if self.parent[t] is None)

    def ancestors(self, t: str) -> list[str]:
        """Strict ancestors of ``t``, root first."""
        out = []
        p = self.parent[t]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out[::-1]

    def leq(self, s: str, t: str) -> bool:
        return s == t or s in self.ancestors(t)

    def comparable(self, s: str, t: str) -> bool:
        return self.leq(s, t) or self.leq(t, s)

    def depth(self, t: str) -> int:
        return len(self.ancestors(t))

    @cached_property
    def children(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {t: [] for t in self.nodes}
        for t in self.nodes:
            if self.parent[t] is not None:
                out[self.parent[t]].append(t)
        return out

    def leaves(self) -> list[str]:
        return [t for t in self.nodes if not self.children[t]]

    def branches(self) -> list[list[str]]:
        return [self.ancestors(t) + [t] for t in self.leaves()]


def full_binary_tree(depth: int) -> FiniteTree:
    """Nodes are 0/1 strings of length at most ``depth``; the root is ``r``."""
    pairs: list[tuple[str, str | None]] = [("r", None)]
    frontier = ["r"]
    for _ in range(depth):
        nxt = []
        for t in frontier:
            for b in "01":
                child = (t if t != "r" else "") + b
                pairs.append((child, t))
                nxt.append(child)
        frontier = nxt
    return FiniteTree.from_parents(pairs)


def random_tree(rng: random.Random, size: int) -> FiniteTree:
    """Random recursive tree on ``size`` nodes named ``n0..``."""
    pairs: list[tuple[str, str | None]] = [("n0", None)]
    for i in range(1, size):
        pairs.append((f"n{i}", f"n{rng.randrange(i)}"))
    return FiniteTree.from_parents(pairs)


EMPTY_SEGMENT = "-"


def gen_tree_space(tree: FiniteTree, check: bool = True) -> tuple[CubeSpace, SetFamily]:
    """Initial segments and full branches of ``tree`` as points of ``2^T``, with ``E_t``.

    The empty segment has id ``-``; the segment ``{s : s <= t}`` has id ``t``.
    Full branches of a finite tree are the segments ending at leaves.
    """
    nodes = tree.nodes
    ids = [EMPTY_SEGMENT]
    vecs = ["0" * len(nodes)]
    for t in nodes:
        below = set(tree.ancestors(t)) | {t}
        ids.append(t)
        vecs.append("".join("1" if s in below else "0" for s in nodes))
    space = CubeSpace(tuple(nodes), tuple(ids), tuple(vecs))
    family = SetFamily.coordinates(space)
    if check:
        for a, b in combinations(family.masks, 2):
            if a & b and a & ~b and b & ~a:
                raise PostconditionError("tree space sets are not comparable-or-disjoint")
        if not is_realizable(family).realizable:
            raise PostconditionError("tree space family is not realizable")
    return space, family


def depends_on(space: CubeSpace, mask: int, coords: Iterable[int]) -> bool:
    """True iff membership in ``mask`` is determined by the bits at ``coords``."""
    coords = list(coords)
    seen: dict[tuple[str, ...], bool] = {}
    for p, b in enumerate(space.bits):
        key = tuple(b[c] for c in coords)
        inside = bool(mask >> p & 1)
        if seen.setdefault(key, inside) != inside:
            return False
    return True


def lower_point(tree: FiniteTree, t: str) -> str:
    """Id of ``x(t) = 1_{s < t}`` in the tree space."""
    p = tree.parent[t]
    return EMPTY_SEGMENT if p is None else p


class Marker(NamedTuple):
    node: str
    kind: str  # "x" for 1_{s<t}, "y" for 1_{s<=t}
    point: str


def tree_marker_points(tree: FiniteTree, family: SetFamily, member: int, deps: Iterable[str]) -> Marker:
    """Find ``t`` in ``deps`` with ``x(t)`` or ``y(t)`` inside the member.

    If the empty segment lies outside the member, take any point of the
    member and the highest node of its segment inside ``deps``: then
    ``y(t)`` is in the member.  Otherwise take a point outside the member
    and the lowest such node: then ``x(t)`` is in the member.
    """
    space = family.space
    mask = family.masks[member]
    deps = list(deps)
    col = {lab: i for i, lab in enumerate(space.coord_labels)}
    dcols = [col[t] for t in deps]
    if mask == 0 or mask == space.full:
        raise ValueError("member is trivial")
    if not depends_on(space, mask, dcols):
        raise ValueError(f"member {family.names[member]!r} is not determined by {deps}")
    zero = space.point(EMPTY_SEGMENT)
    dset = set(deps)
    if not mask >> zero & 1:
        p = bits_of(mask)[0]
        seg = [space.coord_labels[i] for i, ch in enumerate(space.bits[p]) if ch == "1"]
        t = max((s for s in seg if s in dset), key=tree.depth)
        marker = Marker(t, "y", t)
    else:
        p = bits_of(space.full & ~mask)[0]
        seg = [space.coord_labels[i] for i, ch in enumerate(space.bits[p]) if ch == "1"]
        t = min((s for s in seg if s in dset), key=tree.depth)
        marker = Marker(t, "x", lower_point(tree, t))
    if not mask >> space.point(marker.point) & 1:
        raise PostconditionError(f"marker {marker} is not inside the member")
    return marker


class Clopen(NamedTuple):
    name: str
    mask: int
    deps: tuple[str, ...]


class Lemma52Report(NamedTuple):
    holds: bool
    threshold: int
    checked: int
    counterexample: tuple[str, ...] | None


def independence_threshold(k: int) -> int:
    """Least ``n`` with ``2^n > 2nk``; larger ``n`` satisfy it too."""
    n = 1
    while 2 ** n <= 2 * n * k:
        n += 1
    return n


def lemma52_check(tree: FiniteTree, space: CubeSpace, clopens: Sequence[Clopen], k: int) -> Lemma52Report:
    """No selection of ``n`` clopens with ``2^n > 2nk`` is independent.

    Independence passes to subfamilies, so checking all selections of the
    least such size settles every larger size.
    """
    col = {lab: i for i, lab in enumerate(space.coord_labels)}
    for c in clopens:
        if len(c.deps) > k:
            raise ValueError(f"clopen {c.name!r} depends on {len(c.deps)} > {k} coordinates")
        if not depends_on(space, c.mask, [col[t] for t in c.deps]):
            raise ValueError(f"clopen {c.name!r} is not determined by {list(c.deps)}")
    n = independence_threshold(k)
    fam = SetFamily(space, tuple(c.name for c in clopens), tuple(c.mask for c in clopens))
    checked = 0
    for sel in combinations(range(len(clopens)), n):
        checked += 1
        if is_independent(fam, sel):
            return Lemma52Report(False, n, checked, tuple(clopens[i].name for i in sel))
    return Lemma52Report(True, n, checked, None)


def coordinate_clopens(space: CubeSpace) -> list[Clopen]:
    """``E_t`` and its complement for every node ``t``."""
    out = []
    for i, lab in enumerate(space.coord_labels):
        m = space.coord_masks[i]
        out.append(Clopen(f"E{lab}", m, (lab,)))
        out.append(Clopen(f"~E{lab}", space.full & ~m, (lab,)))
    return out


def random_clopens(rng: random.Random, space: CubeSpace, k: int, count: int) -> list[Clopen]:
    """Random distinct nontrivial clopens, each a Boolean function of at most ``k`` coordinates.

    Gives up with ``ValueError`` when ``count`` distinct sets do not turn up
    in ``200 * count`` draws (small spaces have few such sets).
    """
    labels = space.coord_labels
    out: list[Clopen] = []
    seen = set()
    for _ in range(200 * count):
        if len(out) == count:
            break
        size = rng.randint(1, k)
        deps = tuple(sorted(rng.sample(range(len(labels)), size)))
        table = rng.getrandbits(2 ** size)
        mask = 0
        for p, b in enumerate(space.bits):
            idx = sum(1 << j for j, c in enumerate(deps) if b[c] == "1")
            if table >> idx & 1:
                mask |= 1 << p
        if mask in (0, space.full) or mask in seen:
            continue
        seen.add(mask)
        out.append(Clopen(f"c{len(out)}", mask, tuple(labels[c] for c in deps)))
    if len(out) < count:
        raise ValueError(f"found only {len(out)} distinct clopens, wanted {count}")
    return out


def antichain_decomposition(tree: FiniteTree, pieces: Sequence[Iterable[str]]) -> list[tuple[tuple[int, int], tuple[str, ...]]]:
    """Split each piece by the number of piece members strictly below a node.

    Returns ``((piece, level), nodes)`` pairs sorted by piece then level;
    every class is checked to be an antichain.
    """
    parts = [list(p) for p in pieces]
    flat = [t for p in parts for t in p]
    if sorted(flat) != sorted(tree.nodes) or len(set(flat)) != len(flat):
        raise ValueError("pieces do not partition the tree")
    classes: dict[tuple[int, int], list[str]] = {}
    for n, piece in enumerate(parts):
        members = set(piece)
        for t in piece:
            level = sum(1 for s in tree.ancestors(t) if s in members)
            classes.setdefault((n, level), []).append(t)
    out = []
    order = {t: i for i, t in enumerate(tree.nodes)}
    for key in sorted(classes):
        nodes = tuple(sorted(classes[key], key=order.get))
        for s, t in combinations(nodes, 2):
            if tree.comparable(s, t):
                raise PostconditionError(f"class {key} holds comparable nodes {s!r}, {t!r}")
        out.append((key, nodes))
    return out
