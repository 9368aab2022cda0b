"""The graph of nonempty atomic intersections of a finite family."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .family import SetFamily, Signature, _signatures


@dataclass(frozen=True)
class AtomGraph:
    """``gr(F)`` for the distinct sets ``classes`` of ``family``.

    Vertices are signatures sorted by key; ``edges`` holds index pairs
    ``(i, j)`` with ``i < j`` whose keys differ in exactly one class.
    """

    family: SetFamily
    classes: tuple[int, ...]
    vertices: tuple[Signature, ...]
    edges: tuple[tuple[int, int], ...]

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def vertex_index(self, key: int) -> int:
        for i, v in enumerate(self.vertices):
            if v.key == key:
                return i
        raise KeyError(key)


def build_graph(family: SetFamily, selection: Iterable[int] | None = None) -> AtomGraph:
    """Build ``gr`` for the selected members (all members if ``selection`` is None).

    An explicit empty selection is allowed and gives the one-vertex graph on
    the empty signature.
    """
    classes = family.select_classes(selection)
    verts = _signatures(family, classes)
    pos = {v.key: i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        for c in classes:
            j = pos.get(v.key ^ (1 << c))
            if j is not None and j > i:
                edges.append((i, j))
    edges.sort()
    return AtomGraph(family, classes, tuple(verts), tuple(edges))


def components(graph: AtomGraph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex-index tuples, ordered by least vertex."""
    adj = graph.neighbours()
    seen = [False] * len(graph.vertices)
    comps = []
    for start in range(len(graph.vertices)):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(graph: AtomGraph) -> bool:
    return len(components(graph)) <= 1


class Projection(NamedTuple):
    graph: AtomGraph
    vertex_map: tuple[int, ...]
    onto: bool
    edge_nonincreasing: bool


def project(graph: AtomGraph, removed: int) -> Projection:
    """Drop the distinct set of member ``removed`` and map ``Y -> Y - {removed}``.

    The vertex map sends each vertex of ``graph`` to a vertex of the reduced
    graph; ``onto`` and ``edge_nonincreasing`` certify the two properties the
    single-check decision relies on.
    """
    c = graph.family.class_of[removed]
    if c not in graph.classes:
        raise ValueError(f"member {removed} is not in the selection")
    kept = [graph.family.classes[k][0] for k in graph.classes if k != c]
    reduced = build_graph(graph.family, kept)
    pos = {v.key: i for i, v in enumerate(reduced.vertices)}
    vmap = tuple(pos[v.key & ~(1 << c)] for v in graph.vertices)
    onto = set(vmap) == set(range(len(reduced.vertices)))
    red_edges = set(reduced.edges)
    nonincreasing = all(
        vmap[i] == vmap[j] or (min(vmap[i], vmap[j]), max(vmap[i], vmap[j])) in red_edges
        for i, j in graph.edges
    )
    return Projection(reduced, vmap, onto, nonincreasing)


_PALETTE = (
    "lightblue", "lightpink", "palegreen", "khaki", "plum",
    "lightsalmon", "lightcyan", "wheat", "thistle", "honeydew",
)


def to_dot(graph: AtomGraph, name: str = "gr") -> str:
    """Render the graph in DOT; nodes are colored by component."""
    fam = graph.family
    comp_of = {}
    for k, comp in enumerate(components(graph)):
        for v in comp:
            comp_of[v] = k
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for i, v in enumerate(graph.vertices):
        size = bin(v.atom).count("1")
        label = v.label(fam).replace('"', '\\"')
        color = _PALETTE[comp_of[i] % len(_PALETTE)]
        lines.append(f'  v{i} [label="{label}\\n|atom|={size}", fillcolor={color}];')
    for i, j in graph.edges:
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe(graph: AtomGraph) -> dict:
    comps = components(graph)
    return {
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "components": len(comps),
        "component_sizes": [len(c) for c in comps],
        "isolated": [graph.vertices[c[0]].label(graph.family) for c in comps if len(c) == 1],
    }


__all__ = [
    "AtomGraph",
    "Projection",
    "build_graph",
    "components",
    "describe",
    "is_connected",
    "project",
    "to_dot",
]
