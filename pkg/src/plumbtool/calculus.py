"""Boundary-preserving moves on plumbing trees and reduction to normal form.

Only the tree-preserving part of the plumbing calculus is implemented:
(-1)-blow-downs of vertices of valence at most two, their inverse blow-ups,
and absorption of a 0-weighted vertex of valence two.  Every move keeps
|det| of the intersection form fixed; blow-ups and blow-downs flip its sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .errors import IllegalMoveError, InternalError, InvalidSiteError
from .form import graph_determinant
from .graph import PlumbingGraph, VertexId, canonical_code, classify


class MoveKind(enum.Enum):
    BLOW_DOWN_DEG0 = "BlowDownDeg0"
    BLOW_DOWN_DEG1 = "BlowDownDeg1"
    BLOW_DOWN_DEG2 = "BlowDownDeg2"
    BLOW_UP_EDGE = "BlowUpEdge"
    BLOW_UP_LEAF = "BlowUpLeaf"
    BLOW_UP_FREE = "BlowUpFree"
    ZERO_CHAIN_ABSORB = "ZeroChainAbsorb"


class _Free:
    def __repr__(self):
        return "FREE"


FREE = _Free()
"""Blow-up site meaning 'add an isolated (-1)-vertex'."""

Site = Union[tuple, VertexId, _Free]


@dataclass(frozen=True)
class MoveRecord:
    """One applied move.

    ``site`` lists the vertices involved: the blown-down vertex followed by its
    neighbours, the blown-up edge or vertex, or ``(v, kept, merged)`` for a
    0-chain absorption.  ``weight_deltas`` holds the weight change of every
    surviving vertex; ``created`` is the fresh id of a blown-up vertex and
    ``moved`` the neighbours transferred from the merged vertex.
    """

    kind: MoveKind
    site: tuple[VertexId, ...]
    weight_deltas: dict[VertexId, int] = field(default_factory=dict)
    created: Optional[VertexId] = None
    moved: tuple[VertexId, ...] = ()
    merged_weight: Optional[int] = None

    def to_json(self) -> dict:
        d = {
            "kind": self.kind.value,
            "site": list(self.site),
            "weight_deltas": {str(k): v for k, v in self.weight_deltas.items()},
        }
        if self.created is not None:
            d["created"] = self.created
        if self.kind is MoveKind.ZERO_CHAIN_ABSORB:
            d["moved"] = list(self.moved)
            d["merged_weight"] = self.merged_weight
        return d


_BLOW_DOWN_KINDS = (MoveKind.BLOW_DOWN_DEG0, MoveKind.BLOW_DOWN_DEG1, MoveKind.BLOW_DOWN_DEG2)


def _remove_vertex(g: PlumbingGraph, v: VertexId, extra_edges=(), deltas=None):
    deltas = deltas or {}
    weights = {u: g.weight(u) + deltas.get(u, 0) for u in g.vertices if u != v}
    edges = [e for e in g.edges if v not in e] + list(extra_edges)
    return PlumbingGraph(weights, edges, g.labels)


def blow_down(g: PlumbingGraph, v: VertexId) -> tuple[PlumbingGraph, MoveRecord]:
    if v not in g:
        raise IllegalMoveError(f"no vertex {v}")
    if g.weight(v) != -1:
        raise IllegalMoveError(f"vertex {v} has weight {g.weight(v)}, not -1")
    nbrs = sorted(g.neighbors(v), key=g.index_of().__getitem__)
    if len(nbrs) > 2:
        raise IllegalMoveError(f"vertex {v} has valence {len(nbrs)}")
    deltas = {u: 1 for u in nbrs}
    extra = [tuple(nbrs)] if len(nbrs) == 2 else []
    kind = _BLOW_DOWN_KINDS[len(nbrs)]
    h = _remove_vertex(g, v, extra, deltas)
    return h, MoveRecord(kind, (v, *nbrs), deltas)


def blow_up(g: PlumbingGraph, site: Site) -> tuple[PlumbingGraph, MoveRecord]:
    new = g.next_id()
    weights = g.weights
    edges = list(g.edges)
    if site is FREE:
        kind, where, deltas = MoveKind.BLOW_UP_FREE, (), {}
    elif isinstance(site, tuple):
        if len(site) != 2 or not g.has_edge(*site):
            raise InvalidSiteError(f"{site!r} is not an edge")
        u, w = site
        edges = [e for e in edges if set(e) != {u, w}] + [(u, new), (new, w)]
        kind, where, deltas = MoveKind.BLOW_UP_EDGE, (u, w), {u: -1, w: -1}
    elif isinstance(site, int) and site in g:
        edges.append((site, new))
        kind, where, deltas = MoveKind.BLOW_UP_LEAF, (site,), {site: -1}
    else:
        raise InvalidSiteError(f"invalid blow-up site {site!r}")
    for u, d in deltas.items():
        weights[u] += d
    weights[new] = -1
    h = PlumbingGraph(weights, edges, g.labels)
    return h, MoveRecord(kind, where, deltas, created=new)


def zero_chain_absorb(g: PlumbingGraph, v: VertexId) -> tuple[PlumbingGraph, MoveRecord]:
    """Replace ``u - 0 - w`` by a single vertex of weight ``e(u) + e(w)``.

    The surviving vertex keeps the id of whichever neighbour comes first in
    insertion order and inherits all other edges of the merged one.
    """
    if v not in g or g.weight(v) != 0 or g.valence(v) != 2:
        raise IllegalMoveError(f"vertex {v} is not a 0-weighted vertex of valence 2")
    idx = g.index_of()
    keep, gone = sorted(g.neighbors(v), key=idx.__getitem__)
    moved = tuple(sorted(g.neighbors(gone) - {v}, key=idx.__getitem__))
    weights = {
        u: g.weight(u) for u in g.vertices if u not in (v, gone)
    }
    weights[keep] += g.weight(gone)
    edges = [e for e in g.edges if v not in e and gone not in e]
    edges += [(keep, x) for x in moved]
    h = PlumbingGraph(weights, edges, g.labels)
    rec = MoveRecord(
        MoveKind.ZERO_CHAIN_ABSORB,
        (v, keep, gone),
        {keep: g.weight(gone)},
        moved=moved,
        merged_weight=g.weight(gone),
    )
    return h, rec


def apply_move(g: PlumbingGraph, rec: MoveRecord) -> PlumbingGraph:
    """Re-apply a recorded move to ``g``; raises if it does not reproduce."""
    k = rec.kind
    if k in _BLOW_DOWN_KINDS:
        h, again = blow_down(g, rec.site[0])
    elif k is MoveKind.ZERO_CHAIN_ABSORB:
        h, again = zero_chain_absorb(g, rec.site[0])
    elif k is MoveKind.BLOW_UP_FREE:
        h, again = blow_up(g, FREE)
    elif k is MoveKind.BLOW_UP_LEAF:
        h, again = blow_up(g, rec.site[0])
    else:
        h, again = blow_up(g, tuple(rec.site))
    if again != rec:
        raise IllegalMoveError(f"move {rec} does not replay on this graph")
    return h


def replay(g: PlumbingGraph, moves: Sequence[MoveRecord]) -> PlumbingGraph:
    for rec in moves:
        g = apply_move(g, rec)
    return g


def undo(g: PlumbingGraph, rec: MoveRecord) -> PlumbingGraph:
    """Apply the inverse of ``rec`` to the graph it produced."""
    k = rec.kind
    weights = g.weights
    edges = list(g.edges)
    if k in (MoveKind.BLOW_UP_EDGE, MoveKind.BLOW_UP_LEAF, MoveKind.BLOW_UP_FREE):
        return blow_down(g, rec.created)[0]
    if k is MoveKind.ZERO_CHAIN_ABSORB:
        v, keep, gone = rec.site
        weights[keep] -= rec.merged_weight
        weights[gone] = rec.merged_weight
        weights[v] = 0
        edges = [e for e in edges if not (keep in e and (set(e) - {keep}) <= set(rec.moved))]
        edges += [(keep, v), (v, gone)] + [(gone, x) for x in rec.moved]
        return PlumbingGraph(weights, edges, g.labels)
    v, *nbrs = rec.site
    for u in nbrs:
        weights[u] -= 1
    weights[v] = -1
    if len(nbrs) == 2:
        edges = [e for e in edges if set(e) != set(nbrs)]
    edges += [(v, u) for u in nbrs]
    return PlumbingGraph(weights, edges, g.labels)


def applicable_moves(g: PlumbingGraph) -> list[tuple[MoveKind, VertexId]]:
    """Reducing moves available on ``g``, in canonical vertex order."""
    out = []
    for v in canonical_code(g).vertex_order:
        w, val = g.weight(v), g.valence(v)
        if w == -1 and val <= 2:
            out.append((_BLOW_DOWN_KINDS[val], v))
        elif w == 0 and val == 2:
            out.append((MoveKind.ZERO_CHAIN_ABSORB, v))
    return out


def reduce_step(g: PlumbingGraph, kind: MoveKind, v: VertexId):
    if kind is MoveKind.ZERO_CHAIN_ABSORB:
        return zero_chain_absorb(g, v)
    return blow_down(g, v)


@dataclass(frozen=True)
class ReductionReport:
    final_graph: PlumbingGraph
    moves: list[MoveRecord]
    reached_fixed_point: bool

    def to_json(self) -> dict:
        from .io import to_dict

        return {
            "graph": to_dict(self.final_graph),
            "moves": [m.to_json() for m in self.moves],
            "reached_fixed_point": self.reached_fixed_point,
        }


def reduce_to_normal_form(g: PlumbingGraph) -> ReductionReport:
    """Greedily blow down (-1)-vertices and absorb 0-chains until stuck.

    The site is always the first applicable vertex in canonical order, so the
    result depends only on the isomorphism class of the input.  |det| is
    checked after every step.
    """
    target = abs(graph_determinant(g))
    moves = []
    while True:
        avail = applicable_moves(g)
        if not avail:
            return ReductionReport(g, moves, True)
        n_before = len(g)
        g, rec = reduce_step(g, *avail[0])
        moves.append(rec)
        if len(g) >= n_before:
            raise InternalError("reduction step did not shrink the graph")
        if abs(graph_determinant(g)) != target:
            raise InternalError(f"|det| changed after {rec.kind.value}")


class Verdict(enum.Enum):
    SAME = "Same"
    DIFFERENT = "Different"
    UNKNOWN = "Unknown"


def _shape_is_simple(g: PlumbingGraph) -> bool:
    if len(g) == 0:
        return True
    if not g.is_connected():
        return False
    c = classify(g)
    return c.is_linear or len(c.node_ids) == 1


def _seifert_or_none(g: PlumbingGraph):
    from .seifert import seifert_data_from_star
    from .errors import NotReducedError, NotStarError

    if len(g) == 0 or not g.is_connected():
        return None
    c = classify(g)
    if len(c.node_ids) != 1 or c.branch_count < 3:
        return None
    try:
        return seifert_data_from_star(g)
    except (NotStarError, NotReducedError):
        return None


def same_boundary(g1: PlumbingGraph, g2: PlumbingGraph) -> Verdict:
    """Compare boundaries through normal forms.

    ``Same`` is always sound.  ``Different`` is only reported for reduced
    star-shaped or linear graphs that also differ in |det| or in Seifert
    data; everything else is ``Unknown``.
    """
    r1 = reduce_to_normal_form(g1).final_graph
    r2 = reduce_to_normal_form(g2).final_graph
    if canonical_code(r1).code == canonical_code(r2).code:
        return Verdict.SAME
    if not (_shape_is_simple(r1) and _shape_is_simple(r2)):
        return Verdict.UNKNOWN
    if abs(graph_determinant(r1)) != abs(graph_determinant(r2)):
        return Verdict.DIFFERENT
    s1, s2 = _seifert_or_none(r1), _seifert_or_none(r2)
    if s1 is not None and s2 is not None and s1.normalized_key() != s2.normalized_key():
        return Verdict.DIFFERENT
    return Verdict.UNKNOWN
