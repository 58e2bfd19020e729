"""Parameterised graph templates stored as JSON data files.

A template lists *variants*; the first whose ``when`` condition holds is
used.  Each variant names some anchor vertices and a list of chains::

    {"family": "...", "figure": "...", "params": ["n"],
     "variants": [
        {"when": "n >= 1",
         "anchors": [{"name": "L", "weight": "-1"}, ...],
         "chains": [{"from": "L", "to": "R", "weights": []},
                    {"from": "L", "weights": ["-3", {"repeat": "-2", "count": "n-1"}]}]}],
     "checksum": "sha256:..."}

Weights and counts are integer expressions in the parameters (``+ - * //``,
parentheses, comparisons and ``and``/``or`` in conditions).  The checksum
covers everything except the checksum field itself.
"""

from __future__ import annotations

import ast
import hashlib
import json
import operator
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional, Union

from .errors import DomainError, TranscriptionError
from .graph import PlumbingGraph

FIXTURES_ENV = "PLUMBTOOL_FIXTURES"

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def evaluate(expr: Union[str, int], env: Mapping[str, int]):
    """Evaluate a small integer expression without ``eval``."""
    if isinstance(expr, int):
        return expr
    tree = ast.parse(str(expr), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise TranscriptionError(f"unknown parameter {node.id!r} in {expr!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right_node in zip(node.ops, node.comparators):
                right = ev(right_node)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        raise TranscriptionError(f"unsupported syntax in {expr!r}")

    return ev(tree)


def checksum(template: Mapping) -> str:
    body = {k: v for k, v in template.items() if k != "checksum"}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("plumbtool") / "fixtures"))


def load_template(name: str, directory: Optional[Union[str, Path]] = None) -> dict:
    path = Path(directory) if directory is not None else fixture_dir()
    return _load(str(path / f"{name}.json"))


@lru_cache(maxsize=None)
def _load_cached(path: str, mtime: float) -> str:
    return Path(path).read_text()


def _load(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise TranscriptionError(f"missing fixture {path}")
    data = json.loads(_load_cached(path, p.stat().st_mtime))
    if data.get("checksum") != checksum(data):
        raise TranscriptionError(f"checksum mismatch in {p.name}")
    return data


def instantiate(template: Mapping, params: Mapping[str, int]) -> PlumbingGraph:
    """Build the graph a template describes for the given parameter values."""
    names = template["params"]
    if set(params) != set(names):
        raise DomainError(f"{template['family']} takes parameters {names}, got {sorted(params)}")
    env = dict(params)
    variant = None
    for var in template["variants"]:
        if evaluate(var.get("when", "1 == 1"), env):
            variant = var
            break
    if variant is None:
        raise DomainError(f"{template['family']}: parameters {env} outside every variant")
    tag = template.get("figure", template["family"])
    weights: dict[int, int] = {}
    labels: dict[int, str] = {}
    edges = []
    anchor_id = {}
    for a in variant["anchors"]:
        v = len(weights)
        anchor_id[a["name"]] = v
        weights[v] = evaluate(a["weight"], env)
        labels[v] = f"{tag}:{a['name']}"
    for ci, ch in enumerate(variant["chains"]):
        prev = anchor_id[ch["from"]]
        cname = ch.get("name", f"c{ci}")
        k = 0
        for item in ch["weights"]:
            if isinstance(item, dict):
                count = evaluate(item["count"], env)
                if count < 0:
                    raise TranscriptionError(f"negative repeat count in {cname} for {env}")
                ws = [evaluate(item["repeat"], env)] * count
            else:
                ws = [evaluate(item, env)]
            for w in ws:
                v = len(weights)
                weights[v] = w
                labels[v] = f"{tag}:{cname}[{k}]"
                edges.append((prev, v))
                prev = v
                k += 1
        if "to" in ch:
            edges.append((prev, anchor_id[ch["to"]]))
    return PlumbingGraph(weights, edges, labels)
