"""Readers and writers for family, witness, tree and adequate-spec files."""

from __future__ import annotations

import json
from typing import Any

from .catalog import AdequateSpec, FiniteTree
from .errors import FormatError
from .family import Canonical, CubeSpace, SetFamily, canonicalize
from .witness import Segment, WitnessComplex


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _str_list(obj: Any, key: str) -> list[str]:
    items = obj.get(key)
    if not isinstance(items, list) or not all(isinstance(x, str) for x in items):
        raise FormatError(f"{key!r} must be a list of strings")
    return items


def _cube_points(obj: dict, n_coords: int) -> tuple[list[str], list[str]]:
    points = obj.get("points")
    if not isinstance(points, list) or not points:
        raise FormatError("'points' must be a nonempty list")
    ids: list[str] = []
    bits: list[str] = []
    seen_ids: dict[str, int] = {}
    seen_bits: dict[str, str] = {}
    for k, p in enumerate(points):
        if not isinstance(p, dict) or not isinstance(p.get("id"), str) or not isinstance(p.get("bits"), str):
            raise FormatError(f"points[{k}]: expected an object with string 'id' and 'bits'")
        pid, b = p["id"], p["bits"]
        if pid in seen_ids:
            raise FormatError(f"points[{k}]: duplicate id {pid!r} (first at points[{seen_ids[pid]}])")
        if len(b) != n_coords or set(b) - {"0", "1"}:
            raise FormatError(f"points[{k}] ({pid!r}): malformed bit string {b!r}, need {n_coords} characters of 0/1")
        if b in seen_bits:
            raise FormatError(f"points[{k}] ({pid!r}): bit string {b!r} repeats point {seen_bits[b]!r}")
        seen_ids[pid] = k
        seen_bits[b] = pid
        ids.append(pid)
        bits.append(b)
    return ids, bits


def parse_family(text: str) -> Canonical:
    """Parse a family file in cube form or ground form."""
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    if "coords" in obj:
        coords = _str_list(obj, "coords")
        if len(set(coords)) != len(coords):
            dup = next(c for c in coords if coords.count(c) > 1)
            raise FormatError(f"coords: duplicate label {dup!r}")
        ids, bits = _cube_points(obj, len(coords))
        space = CubeSpace(tuple(coords), tuple(ids), tuple(bits))
        return Canonical(space, SetFamily.coordinates(space), {})
    if "ground" in obj:
        ground = _str_list(obj, "ground")
        if not ground:
            raise FormatError("'ground' must be nonempty")
        seen: dict[str, int] = {}
        for k, g in enumerate(ground):
            if g in seen:
                raise FormatError(f"ground[{k}]: duplicate id {g!r}")
            seen[g] = k
        sets = obj.get("sets")
        if not isinstance(sets, list):
            raise FormatError("'sets' must be a list")
        parsed = []
        names: set[str] = set()
        for k, s in enumerate(sets):
            if not isinstance(s, dict) or not isinstance(s.get("name"), str) or not isinstance(s.get("members"), list):
                raise FormatError(f"sets[{k}]: expected an object with string 'name' and list 'members'")
            if s["name"] in names:
                raise FormatError(f"sets[{k}]: duplicate name {s['name']!r}")
            names.add(s["name"])
            for m in s["members"]:
                if m not in seen:
                    raise FormatError(f"sets[{k}] ({s['name']!r}): unknown member {m!r}")
            parsed.append((s["name"], s["members"]))
        return canonicalize(ground, parsed)
    raise FormatError("expected cube form ('coords', 'points') or ground form ('ground', 'sets')")


def family_to_obj(family: SetFamily) -> dict:
    sp = family.space
    if family.is_coordinate_family():
        return {
            "coords": list(sp.coord_labels),
            "points": [{"id": pid, "bits": b} for pid, b in zip(sp.point_ids, sp.bits)],
        }
    return {
        "ground": list(sp.point_ids),
        "sets": [{"name": n, "members": sp.ids_of(m)} for n, m in zip(family.names, family.masks)],
    }


def format_family(family: SetFamily) -> str:
    """Cube form for coordinate families, ground form otherwise."""
    return dumps(family_to_obj(family))


def format_witness(w: WitnessComplex) -> str:
    sp = w.space
    return dumps(
        {
            "coords": list(sp.coord_labels),
            "points": [{"id": pid, "bits": b} for pid, b in zip(sp.point_ids, sp.bits)],
            "segments": [
                {"hi": sp.point_ids[s.hi], "lo": sp.point_ids[s.lo], "coord": sp.coord_labels[s.coord]}
                for s in w.segments
            ],
        }
    )


def parse_witness(text: str) -> WitnessComplex:
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    coords = _str_list(obj, "coords")
    ids, bits = _cube_points(obj, len(coords))
    try:
        space = CubeSpace(tuple(coords), tuple(ids), tuple(bits))
    except ValueError as e:
        raise FormatError(str(e)) from None
    segs = obj.get("segments")
    if not isinstance(segs, list):
        raise FormatError("'segments' must be a list")
    col = {c: i for i, c in enumerate(coords)}
    out = []
    for k, s in enumerate(segs):
        if not isinstance(s, dict):
            raise FormatError(f"segments[{k}]: expected an object")
        try:
            out.append(Segment(space.point(s["hi"]), space.point(s["lo"]), col[s["coord"]]))
        except (KeyError, TypeError) as e:
            raise FormatError(f"segments[{k}]: unknown or missing reference {e}") from None
    try:
        return WitnessComplex(space, tuple(out))
    except ValueError as e:
        raise FormatError(str(e)) from None


def parse_tree(text: str) -> FiniteTree:
    """Line-oriented ``id parent_id`` pairs; ``-`` marks the root; ``#`` starts a comment."""
    pairs: list[tuple[str, str | None]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'id parent_id', got {raw!r}")
        node, parent = parts
        if node == "-":
            raise FormatError(f"line {lineno}: '-' is reserved for the root's parent")
        pairs.append((node, None if parent == "-" else parent))
    try:
        return FiniteTree.from_parents(pairs)
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_tree(tree: FiniteTree) -> str:
    return "".join(f"{t} {tree.parent[t] or '-'}\n" for t in tree.nodes)


def parse_adequate(text: str) -> AdequateSpec:
    """``{"ground": [...], "maximal"|"members": [[...], ...]}`` or ``{"ground", "n", "sets"}``."""
    obj = _load_json(text)
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object")
    ground = tuple(_str_list(obj, "ground"))

    def groups(key: str) -> tuple[frozenset[str], ...]:
        val = obj[key]
        if not isinstance(val, list) or not all(isinstance(s, list) for s in val):
            raise FormatError(f"{key!r} must be a list of lists")
        return tuple(frozenset(s) for s in val)

    try:
        if "maximal" in obj:
            return AdequateSpec(ground, maximal=groups("maximal"))
        if "members" in obj:
            return AdequateSpec(ground, members=groups("members"))
        if "n" in obj and "sets" in obj:
            if not isinstance(obj["n"], int) or obj["n"] < 1:
                raise FormatError("'n' must be a positive integer")
            return AdequateSpec(ground, n=obj["n"], small=groups("sets"))
    except ValueError as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(str(e)) from None
    raise FormatError("expected 'maximal', 'members', or 'n' with 'sets'")


def format_adequate(spec: AdequateSpec) -> str:
    order = {g: i for i, g in enumerate(spec.ground)}

    def listing(sets):
        return [sorted(s, key=order.get) for s in sets]

    obj: dict[str, Any] = {"ground": list(spec.ground)}
    if spec.maximal is not None:
        obj["maximal"] = listing(spec.maximal)
    elif spec.members is not None:
        obj["members"] = listing(spec.members)
    else:
        obj["n"] = spec.n
        obj["sets"] = listing(spec.small)
    return dumps(obj)
