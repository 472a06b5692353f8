"""``q3t`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import fileio
from .errors import BudgetExceeded, InputError, InternalInvariantError, Q3TError
from .graph_core import goldner_harary, random_3tree

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    inputs: List[str]
    output: Optional[str] = None
    seed: int = 0
    n: Optional[int] = None
    T: int = 1
    depth: int = 0
    max_queues: int = 5
    timeout: Optional[float] = None
    report: Optional[str] = None
    threads: int = 1

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        inputs = [p for p in (getattr(ns, "graph", None), getattr(ns, "layout_file", None)) if p]
        for p in inputs:
            if p != "-" and not os.path.isfile(p):
                raise InputError(f"no such file: {p}")
        try:
            threads = max(1, int(os.environ.get("Q3T_THREADS", "1")))
        except ValueError:
            raise InputError("Q3T_THREADS must be an integer")
        return cls(
            command=ns.command,
            inputs=inputs,
            output=getattr(ns, "output", None),
            seed=getattr(ns, "seed", 0),
            n=getattr(ns, "n", None),
            T=getattr(ns, "T", 1),
            depth=getattr(ns, "depth", 0),
            max_queues=getattr(ns, "max_queues", 5),
            timeout=getattr(ns, "timeout", None),
            report=getattr(ns, "report", None),
            threads=threads,
        )


def _print_json(obj) -> None:
    sys.stdout.write(fileio.dumps(obj))


def cmd_gen(ns, cfg: RunConfig) -> int:
    if ns.kind == "goldner-harary":
        st = goldner_harary()
    else:
        if cfg.n is None:
            raise InputError("--n is required for --kind random")
        st = random_3tree(cfg.n, cfg.seed)
    fileio.write_graph(cfg.output, st.graph, st)
    return EXIT_OK


def cmd_layout(ns, cfg: RunConfig) -> int:
    from .engine import five_queue_layout
    from .verify import max_rainbow

    gf = fileio.read_graph(cfg.inputs[0])
    st = gf.triangulation()
    layout = five_queue_layout(st, outer=ns.outer or gf.outer_face, keep_dummy=ns.keep_dummy,
                               workers=cfg.threads)
    fileio.write_layout(cfg.output, layout)
    need, _ = max_rainbow(gf.graph, layout.order)
    msg = f"queues used: {layout.queues_used} (minimum for this order: {need})\n"
    (sys.stderr if cfg.output in (None, "-") else sys.stdout).write(msg)
    return EXIT_OK


def cmd_verify(ns, cfg: RunConfig) -> int:
    from .verify import is_valid_queue_layout

    gf = fileio.read_graph(cfg.inputs[0])
    layout = fileio.read_layout(cfg.inputs[1])
    report = is_valid_queue_layout(gf.graph, layout, cfg.max_queues)
    if report:
        print(f"ok: {layout.queues_used} queues")
        return EXIT_OK
    print(f"violation: {report.reason}")
    if report.certificate is not None:
        print(json.dumps(report.certificate.to_json()))
    return EXIT_FAIL


def cmd_exact(ns, cfg: RunConfig) -> int:
    from .verify import Budget, exact_queue_number

    gf = fileio.read_graph(cfg.inputs[0])
    try:
        q, order = exact_queue_number(gf.graph, Budget(max_n=ns.max_n, timeout=cfg.timeout))
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc} (lower={exc.lower}, upper={exc.upper})\n")
        return EXIT_FAIL
    _print_json({"queue_number": q, "order": order})
    return EXIT_OK


def cmd_gadget(ns, cfg: RunConfig) -> int:
    from .gadgets import augment_recursive, build_gt

    g = build_gt(cfg.T)
    if cfg.depth:
        g = augment_recursive(g, cfg.depth)
    fileio.write_graph(cfg.output, g.graph)
    return EXIT_OK


def cmd_cases(ns, cfg: RunConfig) -> int:
    from .gadgets import check_case

    params = {}
    if ns.i_min is not None:
        params["i_min"] = ns.i_min
    if ns.i_max is not None:
        params["i_max"] = ns.i_max
    rep = check_case(ns.case, params)
    text = fileio.dumps(rep.to_json())
    if cfg.report:
        fileio.write_text(cfg.report, text)
    print(f"{rep.case}: {rep.enumerated} placements, {len(rep.failures)} failures")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_color(ns, cfg: RunConfig) -> int:
    from .tracks import acyclic_4_coloring, is_acyclic

    gf = fileio.read_graph(cfg.inputs[0])
    col = acyclic_4_coloring(gf.triangulation())
    _print_json({"colors": {str(v): c for v, c in sorted(col.color_of.items())},
                 "acyclic": is_acyclic(gf.graph, col)})
    return EXIT_OK


def cmd_bound(ns, cfg: RunConfig) -> int:
    from .tracks import track_bound

    try:
        print(track_bound(ns.q, ns.c))
    except OverflowError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_svg(ns, cfg: RunConfig) -> int:
    from .svg import arc_diagram

    gf = fileio.read_graph(cfg.inputs[0])
    layout = fileio.read_layout(cfg.inputs[1])
    fileio.write_text(cfg.output, arc_diagram(gf.graph, layout, ns.label_by_position, cfg.max_queues))
    return EXIT_OK


def cmd_debug_level(ns, cfg: RunConfig) -> int:
    from .graph_core import biconnect_augment, components_of_level, peel_levels
    from .outerplanar import leveled_layout

    gf = fileio.read_graph(cfg.inputs[0])
    ls = peel_levels(gf.triangulation(), ns.outer or gf.outer_face)
    if not 0 <= ns.level <= ls.depth:
        raise InputError(f"level {ns.level} out of range 0..{ls.depth}")
    comps = components_of_level(ls, ns.level)
    if ns.component is not None:
        if not 0 <= ns.component < len(comps):
            raise InputError(f"level {ns.level} has {len(comps)} components")
        comps = [comps[ns.component]]
    docs = []
    for c in comps:
        doc = leveled_layout(biconnect_augment(c)).to_json()
        doc["component"] = list(c.ref)
        docs.append(doc)
    _print_json(docs[0] if len(docs) == 1 else docs)
    return EXIT_OK


def _triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated vertex ids")
    return tuple(int(p) for p in parts)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="q3t", description="Queue layouts of planar 3-trees.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate a planar 3-tree")
    s.add_argument("--kind", choices=("random", "goldner-harary"), default="random")
    s.add_argument("--n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("layout", help="compute a 5-queue layout")
    s.add_argument("graph")
    s.add_argument("-o", "--output")
    s.add_argument("--outer", type=_triple, help="outer face as a,b,c")
    s.add_argument("--keep-dummy", action="store_true", help="keep augmentation edges")
    s.set_defaults(func=cmd_layout)

    s = sub.add_parser("verify", help="check a queue layout")
    s.add_argument("graph")
    s.add_argument("layout_file", metavar="layout")
    s.add_argument("--max-queues", type=int, default=5)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("exact", help="exact queue number of a small graph")
    s.add_argument("graph")
    s.add_argument("--timeout", type=float)
    s.add_argument("--max-n", type=int, default=12)
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("gadget", help="build the lower-bound gadget")
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--depth", type=int, choices=(0, 1, 2), default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("cases", help="re-check one case of the lower-bound argument")
    s.add_argument("--case", required=True)
    s.add_argument("--report")
    s.add_argument("--i-min", type=int)
    s.add_argument("--i-max", type=int)
    s.set_defaults(func=cmd_cases)

    s = sub.add_parser("color", help="acyclic 4-colouring")
    s.add_argument("graph")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("bound", help="track-number bound c(2q)^(c-1)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("svg", help="arc diagram of a layout")
    s.add_argument("graph")
    s.add_argument("layout_file", metavar="layout")
    s.add_argument("-o", "--output")
    s.add_argument("--label-by-position", action="store_true")
    s.add_argument("--max-queues", type=int, default=5)
    s.set_defaults(func=cmd_svg)

    s = sub.add_parser("debug-level", help="dump leveled layouts of one level")
    s.add_argument("graph")
    s.add_argument("--level", type=int, default=0)
    s.add_argument("--component", type=int)
    s.add_argument("--outer", type=_triple)
    s.set_defaults(func=cmd_debug_level)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return ns.func(ns, cfg)
    except InternalInvariantError as exc:
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    except (InputError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except Q3TError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
