"""Graph and layout files (UTF-8 JSON, one trailing newline, canonical edge order)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

from .errors import InputError
from .graph_core import SimpleGraph, StackedTriangulation, build_from_stellations, norm_edge, recognize
from .verify import QueueLayout

GRAPH_FORMAT = "q3t-graph"
LAYOUT_FORMAT = "q3t-layout"
PathLike = Union[str, Path]


@dataclass(frozen=True)
class GraphFile:
    graph: SimpleGraph
    construction: Optional[StackedTriangulation] = None
    outer_face: Optional[Tuple[int, int, int]] = None

    def triangulation(self) -> StackedTriangulation:
        """The stored construction, or a recognised one (``NotPlanar3Tree`` if none)."""
        if self.construction is not None:
            return self.construction
        return recognize(self.graph, outer=self.outer_face)


def dumps(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def graph_to_json(g: SimpleGraph, st: Optional[StackedTriangulation] = None,
                  outer_face: Optional[Tuple[int, int, int]] = None) -> dict:
    out = {"format": GRAPH_FORMAT, "n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if st is not None:
        out["construction"] = {
            "base": list(st.base),
            "stellations": [{"apex": s.apex, "face": list(s.face)} for s in st.stellations],
        }
    if outer_face is not None:
        out["outer_face"] = list(outer_face)
    return out


def graph_from_json(data: dict) -> GraphFile:
    if data.get("format") != GRAPH_FORMAT:
        raise InputError(f"not a {GRAPH_FORMAT} document")
    try:
        n = int(data["n"])
        edges = [norm_edge(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph document: {exc}") from exc
    g = SimpleGraph.from_edges(n, edges)
    st = None
    if "construction" in data:
        c = data["construction"]
        st = build_from_stellations(c["base"], [(s["apex"], s["face"]) for s in c["stellations"]])
        if st.edges != g.edges or st.n != n:
            raise InputError("construction record does not match the edge list")
    outer = tuple(data["outer_face"]) if "outer_face" in data else None
    return GraphFile(g, st, outer)


def layout_to_json(layout: QueueLayout) -> dict:
    return {
        "format": LAYOUT_FORMAT,
        "order": list(layout.order),
        "queues": [{"edge": list(e), "queue": q} for e, q in sorted(
            (norm_edge(*e), q) for e, q in layout.queue_of.items())],
        "intervals": [list(iv) for iv in layout.intervals],
    }


def layout_from_json(data: dict) -> QueueLayout:
    if data.get("format") != LAYOUT_FORMAT:
        raise InputError(f"not a {LAYOUT_FORMAT} document")
    try:
        order = tuple(int(v) for v in data["order"])
        queue_of = {norm_edge(int(q["edge"][0]), int(q["edge"][1])): int(q["queue"]) for q in data["queues"]}
        intervals = tuple(tuple(int(x) for x in iv) for iv in data.get("intervals", []))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed layout document: {exc}") from exc
    return QueueLayout(order, queue_of, intervals)


def _load(path: PathLike) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def write_text(path: Optional[PathLike], text: str) -> None:
    """Write ``text`` to ``path``, or to stdout for ``None`` / ``"-"``."""
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_graph(path: PathLike) -> GraphFile:
    return graph_from_json(_load(path))


def write_graph(path: Optional[PathLike], g: SimpleGraph, st: Optional[StackedTriangulation] = None,
                outer_face=None) -> None:
    write_text(path, dumps(graph_to_json(g, st, outer_face)))


def read_layout(path: PathLike) -> QueueLayout:
    return layout_from_json(_load(path))


def write_layout(path: Optional[PathLike], layout: QueueLayout) -> None:
    write_text(path, dumps(layout_to_json(layout)))
