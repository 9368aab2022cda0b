"""Command-line entry point.

Exit codes: 0 on success, 2 on input errors (unreadable or malformed files,
bad arguments, exceeded bounds).  Verdicts never change the exit code,
except for ``verify``, which exits 1 when the check fails.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from . import catalog, decide, formats
from .atomgraph import build_graph, describe, to_dot
from .errors import BoundExceeded, FormatError, PostconditionError
from .family import SetFamily, cube_form
from .witness import build_witness, decompose_along_path, verify_isomorphism


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    target = Path(output)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, target)


def _text_report(pairs: Sequence[tuple[str, object]]) -> str:
    def fmt(v):
        if isinstance(v, bool):
            return str(v).lower()
        if v is None:
            return "-"
        if isinstance(v, (list, tuple)):
            return "[" + ", ".join(fmt(x) for x in v) + "]"
        if isinstance(v, dict):
            return "{" + ", ".join(f"{k}={fmt(x)}" for k, x in v.items()) + "}"
        return str(v)

    return "".join(f"{k}: {fmt(v)}\n" for k, v in pairs)


def _render(obj: dict, as_json: bool) -> str:
    if as_json:
        return formats.dumps(obj)
    return _text_report(list(obj.items()))


def _load_family(path: str) -> formats.Canonical:
    return formats.parse_family(_read(path))


def cmd_analyze(args) -> int:
    can = _load_family(args.input)
    fam = can.family
    if len(fam) == 0:
        raise InputError("family has no sets")
    real = decide.is_realizable(fam)
    irr = decide.is_irredundant(fam)
    strong = decide.is_strongly_irredundant(fam, bound=args.bound or decide.DEFAULT_PARTITION_BOUND)
    pivot = decide.has_pivot_hereditarily(fam, bound=args.bound or decide.DEFAULT_SUBFAMILY_BOUND)
    stats = describe(build_graph(fam))
    obj = {
        "points": fam.space.n_points,
        "sets": len(fam),
        "distinct_sets": fam.n_distinct,
        "duplicates": [[fam.names[i] for i in g] for g in fam.duplicates],
        "collapsed": {k: list(v) for k, v in can.collapsed.items()},
        "realizable": real.realizable,
        "irredundant": irr.irredundant,
        "strongly_irredundant": strong.strongly_irredundant,
        "pivot_hereditary": pivot.holds,
        "graph_vertices": stats["vertices"],
        "graph_edges": stats["edges"],
        "graph_components": stats["components"],
        "component_sizes": stats["component_sizes"],
        "obstruction": list(real.obstruction) if real.obstruction else None,
        "redundant_member": fam.names[irr.violation] if irr.violation is not None else None,
        "violating_partition": (
            [[fam.names[i] for i in block] for block in strong.partition] if strong.partition else None
        ),
        "pivotless_subfamily": [fam.names[i] for i in pivot.failing] if pivot.failing else None,
    }
    _emit(_render(obj, args.json), args.output)
    return 0


def _cube(can: formats.Canonical) -> SetFamily:
    fam = can.family
    return fam if fam.is_coordinate_family() else cube_form(fam).family


def cmd_witness(args) -> int:
    fam = _cube(_load_family(args.input))
    if len(fam) == 0:
        raise InputError("family has no sets")
    report = decide.is_realizable(fam)
    if not report.realizable:
        raise InputError(f"family is not realizable; atom graph has {report.component_count} components")
    _emit(formats.format_witness(build_witness(fam.space, fam)), args.output)
    return 0


def cmd_verify(args) -> int:
    w = formats.parse_witness(_read(args.witness))
    fam = _cube(_load_family(args.input))
    if fam.space != w.space:
        raise InputError("family and witness disagree on coordinates or points")
    n = fam.n_distinct
    arity = args.max_arity if args.max_arity is not None else min(n, 8)
    if not 1 <= arity <= n:
        raise InputError(f"--max-arity must be between 1 and {n}")
    report = verify_isomorphism(w, fam, arity)
    _emit(_render(report.to_dict(), args.json), args.output)
    return 0 if report.verdict and report.connected else 1


def _generate(args) -> SetFamily:
    kind = args.kind
    if kind in catalog.FIXTURES:
        return catalog.FIXTURES[kind]()[1]
    if kind == "sigma":
        if args.n is None or args.m is None:
            raise InputError("sigma needs --n and --m")
        return catalog.gen_sigma(args.n, args.m, bound=args.bound or catalog.SIGMA_BOUND)[1]
    if kind == "sigma2":
        if not args.input:
            raise InputError("sigma2 needs --input with a cube-form subspace of sigma_2")
        space = _load_family(args.input).space
        return catalog.gen_sigma2_family(space)
    if kind == "sigma3":
        if not args.input or args.gamma1 is None:
            raise InputError("sigma3 needs --input and --gamma1")
        space = _load_family(args.input).space
        gamma1 = [g for g in args.gamma1.split(",") if g]
        phi = dict(pair.split(":", 1) for pair in (args.phi or "").split(",") if pair)
        # realizability is not asserted here; run analyze on the output
        return catalog.gen_sigma3_remark_family(space, gamma1, phi, check=False)
    if kind == "adequate":
        if not args.spec:
            raise InputError("adequate needs --spec")
        return catalog.gen_adequate_space(formats.parse_adequate(_read(args.spec)))[1]
    if kind == "tree":
        if not args.tree:
            raise InputError("tree needs --tree")
        return catalog.gen_tree_space(formats.parse_tree(_read(args.tree)))[1]
    raise InputError(f"unknown kind {kind!r}")


def cmd_generate(args) -> int:
    _emit(formats.format_family(_generate(args)), args.output)
    return 0


def cmd_graph(args) -> int:
    fam = _load_family(args.input).family
    _emit(to_dot(build_graph(fam)), args.output)
    return 0


def cmd_extract(args) -> int:
    fam = _load_family(args.input).family
    if args.mode == "chain":
        result = decide.extract_chain_disjoint(fam)
    else:
        result = decide.extract_pi_sequence(fam)
    if args.json or not args.output:
        obj = {
            "mode": args.mode,
            "order": result.order,
            "selected": [fam.names[i] for i in result.selection],
            "rejected": [fam.names[i] for i in result.rejected],
        }
        _emit(_render(obj, args.json), None if args.output else args.output)
    if args.output:
        _emit(formats.format_family(fam.subfamily(result.selection)), args.output)
    return 0


def cmd_decompose(args) -> int:
    fam = _cube(_load_family(args.input))
    w = build_witness(fam.space, fam)
    dec = decompose_along_path(w, fam, args.x, args.y)
    obj = {
        "x": args.x,
        "y": args.y,
        "path": list(dec.path),
        "pieces": [
            {"marker": m, "members": [fam.names[i] for i in p]} for m, p in zip(dec.markers, dec.pieces) if p
        ],
        "partition_property": dec.report.holds,
    }
    _emit(_render(obj, args.json), args.output)
    return 0


def cmd_hull(args) -> int:
    if args.seed is None:
        raise InputError("hull sampling needs --seed")
    spec = formats.parse_adequate(_read(args.spec))
    n = args.n if args.n is not None else spec.n
    if n is None:
        raise InputError("give --n or a spec with 'n'")
    report = catalog.check_hull_claim(spec, n, args.samples, args.seed)
    _emit(_render(report.to_dict(), args.json), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolimg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="family file (JSON)")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--bound", type=int, help="enumeration bound")

    p = sub.add_parser("analyze", help="realizability and irredundancy verdicts")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("witness", help="build the connected witness complex")
    common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="check a witness against a family")
    common(p)
    p.add_argument("--witness", required=True)
    p.add_argument("--max-arity", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write an example family")
    p.add_argument("kind", choices=sorted([*catalog.FIXTURES, "sigma", "sigma2", "sigma3", "adequate", "tree"]))
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--bound", type=int)
    p.add_argument("--spec")
    p.add_argument("--tree")
    p.add_argument("--gamma1", help="sigma3: comma-separated coordinates kept as single sets")
    p.add_argument("--phi", help="sigma3: injection as 'g:h,...' from the other coordinates into gamma1")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("graph", help="DOT rendering of the atom graph")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--dot", action="store_true", help="accepted for symmetry; DOT is the only format")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("extract", help="greedy realizable subfamily")
    common(p)
    p.add_argument("--mode", choices=["chain", "pi"], required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("decompose", help="split a family along a path in its witness")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("hull", help="sample the convex hull of an adequate space")
    common(p, needs_input=False)
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_hull)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "bound", None) is not None and args.bound < 1:
        parser.error("--bound must be positive")
    try:
        return args.func(args)
    except (InputError, FormatError, BoundExceeded, KeyError, ValueError, PostconditionError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"boolimg {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
