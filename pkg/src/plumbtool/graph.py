"""Plumbing graphs: weighted forests whose vertices carry Euler numbers.

A :class:`PlumbingGraph` is an immutable value.  Vertex ids are arbitrary
non-negative integers that stay stable across calculus moves; the insertion
order of vertices fixes the row order of the intersection matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    CycleError,
    DisconnectedError,
    DuplicateEdgeError,
    EmptyGraphError,
    GraphError,
)

VertexId = int


class PlumbingGraph:
    """Immutable weighted forest.

    Use :func:`build_graph` for index-based construction; the constructor takes
    explicit ids and is what the calculus module uses to derive new graphs.
    """

    __slots__ = ("_weights", "_adj", "_labels", "_hash")

    def __init__(
        self,
        weights: Mapping[VertexId, int],
        edges: Iterable[tuple[VertexId, VertexId]] = (),
        labels: Optional[Mapping[VertexId, str]] = None,
    ):
        w = {int(v): int(x) for v, x in weights.items()}
        adj: dict[VertexId, set[VertexId]] = {v: set() for v in w}
        for u, v in edges:
            if u not in adj:
                raise IndexError(f"edge references unknown vertex {u}")
            if v not in adj:
                raise IndexError(f"edge references unknown vertex {v}")
            if u == v:
                raise CycleError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise DuplicateEdgeError(f"duplicate edge {u}-{v}")
            adj[u].add(v)
            adj[v].add(u)
        n_edges = sum(len(s) for s in adj.values()) // 2
        if n_edges > len(w) - _count_components(adj):
            raise CycleError("edges contain a cycle")
        self._weights = w
        self._adj = {v: frozenset(s) for v, s in adj.items()}
        self._labels = {v: str(s) for v, s in (labels or {}).items() if v in w}
        self._hash = None

    # -- accessors -----------------------------------------------------------

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return tuple(self._weights)

    @property
    def weights(self) -> dict[VertexId, int]:
        return dict(self._weights)

    @property
    def labels(self) -> dict[VertexId, str]:
        return dict(self._labels)

    @property
    def edges(self) -> tuple[tuple[VertexId, VertexId], ...]:
        """Edges as (u, v) pairs ordered by the insertion position of u then v."""
        pos = {v: i for i, v in enumerate(self._weights)}
        out = []
        for u in self._weights:
            for v in sorted(self._adj[u], key=pos.__getitem__):
                if pos[u] < pos[v]:
                    out.append((u, v))
        return tuple(out)

    def weight(self, v: VertexId) -> int:
        return self._weights[v]

    def label(self, v: VertexId) -> Optional[str]:
        return self._labels.get(v)

    def neighbors(self, v: VertexId) -> frozenset[VertexId]:
        return self._adj[v]

    def valence(self, v: VertexId) -> int:
        return len(self._adj[v])

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return u in self._adj and v in self._adj[u]

    def __len__(self) -> int:
        return len(self._weights)

    def __contains__(self, v: object) -> bool:
        return v in self._weights

    def next_id(self) -> VertexId:
        """Smallest id larger than every id in use."""
        return max(self._weights, default=-1) + 1

    def components(self) -> list[list[VertexId]]:
        seen: set[VertexId] = set()
        comps = []
        for root in self._weights:
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                v = stack.pop()
                for u in self._adj[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def index_of(self) -> dict[VertexId, int]:
        return {v: i for i, v in enumerate(self._weights)}

    # -- derived graphs ------------------------------------------------------

    def relabeled(self, mapping: Mapping[VertexId, VertexId]) -> "PlumbingGraph":
        """Rename vertex ids (insertion order follows the new ids' order of appearance)."""
        return PlumbingGraph(
            {mapping[v]: x for v, x in self._weights.items()},
            [(mapping[u], mapping[v]) for u, v in self.edges],
            {mapping[v]: s for v, s in self._labels.items()},
        )

    def permuted(self, order: Sequence[VertexId]) -> "PlumbingGraph":
        """Same graph with vertices inserted in the given order."""
        if sorted(order) != sorted(self._weights):
            raise GraphError("order must be a permutation of the vertex ids")
        return PlumbingGraph(
            {v: self._weights[v] for v in order},
            self.edges,
            self._labels,
        )

    def with_weights(self, changes: Mapping[VertexId, int]) -> "PlumbingGraph":
        w = dict(self._weights)
        for v, x in changes.items():
            if v not in w:
                raise KeyError(v)
            w[v] = x
        return PlumbingGraph(w, self.edges, self._labels)

    def disjoint_union(self, other: "PlumbingGraph") -> "PlumbingGraph":
        shift = self.next_id()
        w = dict(self._weights)
        w.update({v + shift: x for v, x in other._weights.items()})
        e = list(self.edges) + [(u + shift, v + shift) for u, v in other.edges]
        labels = dict(self._labels)
        labels.update({v + shift: s for v, s in other._labels.items()})
        return PlumbingGraph(w, e, labels)

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlumbingGraph):
            return NotImplemented
        return (
            list(self._weights.items()) == list(other._weights.items())
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (tuple(self._weights.items()), frozenset(frozenset(e) for e in self.edges))
            )
        return self._hash

    def __repr__(self) -> str:
        idx = self.index_of()
        ws = list(self._weights.values())
        es = [(idx[u], idx[v]) for u, v in self.edges]
        return f"PlumbingGraph(weights={ws}, edges={es})"


def _count_components(adj: Mapping[VertexId, set[VertexId]]) -> int:
    seen: set[VertexId] = set()
    count = 0
    for root in adj:
        if root in seen:
            continue
        count += 1
        seen.add(root)
        stack = [root]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return count


def build_graph(
    vertex_weights: Sequence[int],
    edges: Iterable[Sequence[int]] = (),
    labels: Optional[Sequence[Optional[str]]] = None,
) -> PlumbingGraph:
    """Build a graph whose vertex ids are ``0 .. len(vertex_weights) - 1``.

    Raises IndexError for out-of-range endpoints, DuplicateEdgeError for a
    repeated edge (in either orientation) and CycleError if the edges do not
    form a forest.
    """
    n = len(vertex_weights)
    pairs = []
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"edge {u}-{v} out of range for {n} vertices")
        pairs.append((u, v))
    lab = {}
    if labels is not None:
        lab = {i: s for i, s in enumerate(labels) if s is not None}
    return PlumbingGraph({i: int(x) for i, x in enumerate(vertex_weights)}, pairs, lab)


def chain(weights: Sequence[int]) -> PlumbingGraph:
    """Linear graph with the given weights in order."""
    return build_graph(weights, [(i, i + 1) for i in range(len(weights) - 1)])


def star(center: int, arms: Sequence[Sequence[int]]) -> PlumbingGraph:
    """Star-shaped graph: vertex 0 is the center, each arm is read outward."""
    weights = [center]
    edges = []
    for arm in arms:
        prev = 0
        for x in arm:
            weights.append(x)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return build_graph(weights, edges)


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class Classification:
    node_ids: list[VertexId]
    branch_count: int
    is_linear: bool
    is_star: bool


def branches(g: PlumbingGraph) -> list[list[VertexId]]:
    """Maximal chains starting at a node.

    Each branch is listed from its node outward, and ends either at a leaf or
    at another node; a chain joining two nodes is listed once.  Empty when the
    graph has no node.
    """
    nodes = {v for v in g.vertices if g.valence(v) >= 3}
    out = []
    seen_links: set[frozenset] = set()
    for v in g.vertices:
        if v not in nodes:
            continue
        for u in sorted(g.neighbors(v), key=g.index_of().__getitem__):
            path = [v]
            prev, cur = v, u
            while True:
                path.append(cur)
                if cur in nodes or g.valence(cur) != 2:
                    break
                (nxt,) = g.neighbors(cur) - {prev}
                prev, cur = cur, nxt
            if path[-1] in nodes:
                key = frozenset(((path[0], path[1]), (path[-1], path[-2])))
                if key in seen_links:
                    continue
                seen_links.add(key)
            out.append(path)
    return out


def classify(g: PlumbingGraph) -> Classification:
    if len(g) == 0:
        raise EmptyGraphError("cannot classify the empty graph")
    if not g.is_connected():
        raise DisconnectedError("classification needs a connected graph")
    nodes = [v for v in g.vertices if g.valence(v) >= 3]
    is_linear = not nodes
    return Classification(
        node_ids=nodes,
        branch_count=len(branches(g)),
        is_linear=is_linear,
        is_star=len(nodes) == 1 or len(g) <= 2,
    )


# ---------------------------------------------------------------------------
# Canonical form


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    vertex_order: list[VertexId]


def _centroids(g: PlumbingGraph, comp: list[VertexId]) -> list[VertexId]:
    n = len(comp)
    root = comp[0]
    parent = {root: None}
    order = [root]
    for v in order:
        for u in g.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
    size = {}
    best = n + 1
    cents: list[VertexId] = []
    for v in reversed(order):
        s = 1
        heaviest = 0
        for u in g.neighbors(v):
            if u != parent[v]:
                s += size[u]
                heaviest = max(heaviest, size[u])
        size[v] = s
        heaviest = max(heaviest, n - s)
        if heaviest < best:
            best, cents = heaviest, [v]
        elif heaviest == best:
            cents.append(v)
    return cents


def _rooted_code(g: PlumbingGraph, root: VertexId) -> tuple[bytes, list[VertexId]]:
    # iterative post-order so long chains do not hit the recursion limit
    parent = {root: None}
    order = [root]
    for v in order:
        for u in g.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
    codes: dict[VertexId, bytes] = {}
    kids: dict[VertexId, list[VertexId]] = {}
    for v in reversed(order):
        ch = [u for u in g.neighbors(v) if u != parent[v]]
        ch.sort(key=codes.__getitem__)
        kids[v] = ch
        codes[v] = b"(" + str(g.weight(v)).encode() + b"".join(codes[u] for u in ch) + b")"
    vorder = []
    stack = [root]
    while stack:
        v = stack.pop()
        vorder.append(v)
        stack.extend(reversed(kids[v]))
    return codes[root], vorder


def canonical_code(g: PlumbingGraph) -> CanonicalCode:
    """Isomorphism-complete code for weighted forests.

    Each component is rooted at its centroid (the smaller code wins when there
    are two) and encoded bottom-up with sorted child codes; component codes
    are then sorted and concatenated.
    """
    parts = []
    for comp in g.components():
        best = min(_rooted_code(g, c) for c in _centroids(g, comp))
        parts.append(best)
    parts.sort(key=lambda p: p[0])
    code = b"".join(p[0] for p in parts)
    order = [v for p in parts for v in p[1]]
    return CanonicalCode(code=code, vertex_order=order)


def is_isomorphic(g1: PlumbingGraph, g2: PlumbingGraph) -> bool:
    return canonical_code(g1).code == canonical_code(g2).code
