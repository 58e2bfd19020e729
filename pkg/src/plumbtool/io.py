"""Reading and writing plumbing graphs.

Two formats are understood:

* text::

      # comment
      vertices: -1 -2 -3 -7
      edges: 0-1 0-2 0-3

* JSON: ``{"weights": [...], "edges": [[0, 1], ...]}`` with an optional
  ``"labels"`` array.

Vertices are written in insertion order and renumbered from 0.
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path
from typing import Union

from .errors import GraphError, GraphFormatError
from .graph import PlumbingGraph, build_graph

_EDGE_RE = re.compile(r"^\s*(-?\d+)\s*-\s*(-?\d+)\s*$")


def to_dict(g: PlumbingGraph) -> dict:
    idx = g.index_of()
    out = {
        "weights": [g.weight(v) for v in g.vertices],
        "edges": [[idx[u], idx[v]] for u, v in g.edges],
    }
    if g.labels:
        out["labels"] = [g.label(v) for v in g.vertices]
    return out


def from_dict(data: dict) -> PlumbingGraph:
    if not isinstance(data, dict) or "weights" not in data:
        raise GraphFormatError("JSON graph must be an object with a 'weights' key")
    weights = data["weights"]
    edges = data.get("edges", [])
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in weights):
        raise GraphFormatError("weights must be integers")
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(i, int) for i in e)):
            raise GraphFormatError(f"bad edge {e!r}")
    try:
        return build_graph(weights, edges, data.get("labels"))
    except (GraphError, IndexError) as exc:
        raise GraphFormatError(str(exc)) from exc


def dumps_json(g: PlumbingGraph, *, labels: bool = False) -> str:
    d = to_dict(g)
    if not labels:
        d.pop("labels", None)
    return json.dumps(d, separators=(", ", ": "))


def dumps_text(g: PlumbingGraph) -> str:
    idx = g.index_of()
    ws = " ".join(str(g.weight(v)) for v in g.vertices)
    es = " ".join(f"{idx[u]}-{idx[v]}" for u, v in g.edges)
    return f"vertices: {ws}\nedges: {es}\n".replace(": \n", ":\n")


def parse_text(text: str) -> PlumbingGraph:
    weights = None
    edges: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise GraphFormatError(f"expected 'key: values', got {raw!r}")
        key = key.strip().lower()
        if key == "vertices":
            if weights is not None:
                raise GraphFormatError("duplicate 'vertices' line")
            try:
                weights = [int(tok) for tok in rest.split()]
            except ValueError as exc:
                raise GraphFormatError(f"bad weight in {raw!r}") from exc
        elif key == "edges":
            for tok in rest.split():
                m = _EDGE_RE.match(tok)
                if not m:
                    raise GraphFormatError(f"bad edge token {tok!r}")
                edges.append((int(m.group(1)), int(m.group(2))))
        else:
            raise GraphFormatError(f"unknown key {key!r}")
    if weights is None:
        raise GraphFormatError("missing 'vertices' line")
    try:
        return build_graph(weights, edges)
    except (GraphError, IndexError) as exc:
        raise GraphFormatError(str(exc)) from exc


def parse_graph(text: str) -> PlumbingGraph:
    """Parse either format, detected from the first non-blank character."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
        return from_dict(data)
    return parse_text(text)


def load_graph(source: Union[str, Path]) -> PlumbingGraph:
    """Read a graph from a path, or from stdin when ``source`` is ``-``."""
    if str(source) == "-":
        return parse_graph(sys.stdin.read())
    return parse_graph(Path(source).read_text())
