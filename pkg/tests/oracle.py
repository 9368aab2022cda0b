"""Slow reference implementations over frozensets, independent of the bitset code."""

from __future__ import annotations

from itertools import chain, combinations, product


def subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def algebra(sets, ground):
    """Boolean algebra generated by ``sets``, closed under complement and intersection."""
    ground = frozenset(ground)
    out = {frozenset(), ground} | {frozenset(s) for s in sets}
    while True:
        new = {ground - a for a in out} | {a & b for a in out for b in out}
        if new <= out:
            return out
        out |= new


def atom(sets, chosen, ground):
    """Points in every chosen set and in no other set."""
    region = set(ground)
    for i, s in enumerate(sets):
        region = region & s if i in chosen else region - s
    return frozenset(region)


def graph(sets, ground):
    """Vertices are index sets with a nonempty atom; edges join index sets differing in one index."""
    sets = [frozenset(s) for s in sets]
    verts = [frozenset(y) for y in subsets(range(len(sets))) if atom(sets, set(y), ground)]
    edges = [(u, v) for u, v in combinations(verts, 2) if len(u ^ v) == 1]
    return verts, edges


def component_sizes(verts, edges):
    comp = {v: v for v in verts}

    def find(v):
        while comp[v] != v:
            v = comp[v]
        return v

    for u, v in edges:
        comp[find(u)] = find(v)
    sizes: dict = {}
    for v in verts:
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return sorted(sizes.values())


def distinct(sets):
    out = []
    for s in sets:
        if frozenset(s) not in out:
            out.append(frozenset(s))
    return out


def connected(sets, ground):
    verts, edges = graph(distinct(sets), ground)
    return len(component_sizes(verts, edges)) <= 1


def realizable(sets, ground):
    """Every nonempty subfamily has a connected graph."""
    d = distinct(sets)
    return all(connected([d[i] for i in sub], ground) for sub in subsets(range(len(d))) if sub)


def irredundant(sets, ground):
    d = [frozenset(s) for s in sets]
    for i, a in enumerate(d):
        if a in algebra([s for j, s in enumerate(d) if j != i], ground):
            return False
    return True


def strongly_irredundant(sets, ground):
    """Any two disjoint subfamilies of distinct sets generate algebras meeting in ``{0, L}``."""
    d = distinct(sets)
    trivial = {frozenset(), frozenset(ground)}
    idx = range(len(d))
    for left in subsets(idx):
        rest = [i for i in idx if i not in left]
        for right in subsets(rest):
            meet = algebra([d[i] for i in left], ground) & algebra([d[i] for i in right], ground)
            if meet - trivial:
                return False
    return True


def pivot_hereditary(sets, ground):
    d = distinct(sets)
    for sub in subsets(range(len(d))):
        if not sub:
            continue
        ok = False
        for a in sub:
            gen = algebra([d[i] for i in sub if i != a], ground)
            if not any(g and g <= d[a] for g in gen):
                ok = True
                break
        if not ok:
            return False
    return True


def independent(sets, ground):
    for signs in product((0, 1), repeat=len(sets)):
        region = set(ground)
        for s, b in zip(sets, signs):
            region = region & s if b else region - s
        if not region:
            return False
    return True


def family_sets(family):
    """Member sets of a ``SetFamily`` as frozensets of point indices, plus the ground."""
    n = family.space.n_points
    sets = [frozenset(p for p in range(n) if m >> p & 1) for m in family.masks]
    return sets, frozenset(range(n))
