"""Negative continued fractions, Brieskorn plumbings and Seifert data.

Conventions: an arm with weights ``(-c1, ..., -ck)`` read outward from the
central vertex stands for the fraction ``a/b = [c1, ..., ck]``, and the
Euler number of a star is ``e = central_weight + sum(b_i / a_i)``.  The
star is negative definite iff ``e < 0`` and ``|det| = prod(a_i) * |e|``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Optional, Sequence

from .errors import DomainError, InternalError, NotReducedError, NotStarError
from .form import graph_determinant, is_negative_definite, is_unimodular
from .graph import PlumbingGraph, VertexId, build_graph, canonical_code


@dataclass(frozen=True)
class NcfExpansion:
    p: int
    q: int
    terms: tuple[int, ...]

    def value(self) -> Fraction:
        return evaluate_ncf(self.terms)


def neg_cont_frac(p: int, q: int) -> NcfExpansion:
    """The unique expansion p/q = c1 - 1/(c2 - 1/(... - 1/ck)) with all c_j >= 2."""
    if not (p > q >= 1) or gcd(p, q) != 1:
        raise DomainError(f"need p > q >= 1 coprime, got ({p}, {q})")
    terms = []
    a, b = p, q
    while b:
        c = -(-a // b)
        terms.append(c)
        a, b = b, c * b - a
    return NcfExpansion(p, q, tuple(terms))


def evaluate_ncf(terms: Sequence[int]) -> Fraction:
    if not terms:
        raise DomainError("empty continued fraction")
    x = Fraction(terms[-1])
    for c in reversed(terms[:-1]):
        x = c - 1 / x
    return x


def chain_fraction(terms: Sequence[int]) -> tuple[int, int]:
    """(a, b) with a/b = [c1..ck], computed as chain determinants, so a
    and b stay integral even when an intermediate partial value is 0."""
    a, b = 1, 0
    for c in reversed(terms):
        a, b = c * a - b, a
    return a, b


@dataclass(frozen=True)
class SeifertData:
    b0: int
    """Literal weight of the central vertex."""
    arms: tuple[tuple[int, int], ...]
    """(a_i, b_i) per arm, sorted by a_i."""
    e: Fraction

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.arms)

    def is_brieskorn(self) -> bool:
        """True when the arm multiplicities are pairwise coprime and |e| = 1/prod(a_i)."""
        ms = self.multiplicities
        coprime = all(gcd(x, y) == 1 for i, x in enumerate(ms) for y in ms[i + 1 :])
        return coprime and abs(self.e) * prod(ms) == 1

    def normalized_key(self) -> tuple:
        return (self.b0, tuple(sorted(self.arms)))

    def to_json(self) -> dict:
        return {
            "central_weight": self.b0,
            "arms": [list(a) for a in self.arms],
            "e": str(self.e),
            "brieskorn": self.is_brieskorn(),
        }


def _star_center(g: PlumbingGraph, center: Optional[VertexId]) -> VertexId:
    if len(g) == 0 or not g.is_connected():
        raise NotStarError("graph is empty or disconnected")
    nodes = [v for v in g.vertices if g.valence(v) >= 3]
    if len(nodes) > 1:
        raise NotStarError(f"{len(nodes)} nodes; a star has exactly one")
    if center is not None:
        if center not in g or (nodes and nodes[0] != center):
            raise NotStarError(f"vertex {center} cannot be the center")
        return center
    if nodes:
        return nodes[0]
    # linear graph: a star only if the first vertex can serve as the center
    return g.vertices[0]


def star_arms(g: PlumbingGraph, center: VertexId) -> list[list[VertexId]]:
    arms = []
    for u in sorted(g.neighbors(center), key=g.index_of().__getitem__):
        arm = [u]
        prev = center
        while True:
            nxt = g.neighbors(arm[-1]) - {prev}
            if not nxt:
                break
            if len(nxt) > 1:
                raise NotStarError("an arm branches; graph is not star-shaped")
            prev = arm[-1]
            arm.append(next(iter(nxt)))
        arms.append(arm)
    return arms


def seifert_data_from_star(g: PlumbingGraph, center: Optional[VertexId] = None) -> SeifertData:
    """Read Seifert data off a star whose arm weights are all <= -2.

    Without an explicit ``center`` the unique node is used; a linear graph
    uses its first vertex.
    """
    c = _star_center(g, center)
    data = []
    for arm in star_arms(g, c):
        ws = [g.weight(v) for v in arm]
        if any(w > -2 for w in ws):
            raise NotReducedError(f"arm weights {ws} are not all <= -2")
        a, b = chain_fraction([-w for w in ws])
        data.append((a, b))
    data.sort()
    e = g.weight(c) + sum((Fraction(b, a) for a, b in data), Fraction(0))
    return SeifertData(g.weight(c), tuple(data), e)


def brieskorn_plumbing(a1: int, a2: int, a3: int) -> PlumbingGraph:
    """Negative-definite unimodular star whose boundary is Sigma(a1, a2, a3).

    The center is vertex 0; arms follow in argument order.  An exponent of 1
    yields an empty arm.
    """
    exps = (a1, a2, a3)
    if any(not isinstance(a, int) or a < 1 for a in exps):
        raise DomainError(f"exponents must be positive integers, got {exps}")
    if sum(a == 1 for a in exps) > 1:
        raise DomainError("at most one exponent may equal 1")
    for i in range(3):
        for j in range(i + 1, 3):
            if gcd(exps[i], exps[j]) != 1:
                raise DomainError(f"exponents {exps} are not pairwise coprime")
    A = prod(exps)
    for sign in (-1, 1):
        # e = b0 + sum(b_i/a_i) = sign/A  forces  b_i * (A/a_i) = sign (mod a_i)
        bs = [0 if a == 1 else (sign * pow(A // a, -1, a)) % a for a in exps]
        num = sign - sum(b * (A // a) for a, b in zip(exps, bs))
        if num % A:
            raise InternalError("central weight is not integral")
        central = num // A
        weights = [central]
        edges = []
        for a, b in zip(exps, bs):
            if a == 1:
                continue
            prev = 0
            for t in neg_cont_frac(a, b).terms:
                weights.append(-t)
                edges.append((prev, len(weights) - 1))
                prev = len(weights) - 1
        g = build_graph(weights, edges)
        if is_negative_definite(g):
            if not is_unimodular(g):
                raise InternalError(f"Sigma{exps}: det = {graph_determinant(g)}")
            return g
    raise InternalError(f"no negative-definite plumbing found for Sigma{exps}")


class Obstruction(enum.Enum):
    OBSTRUCTED = "Obstructed"
    NOT_OBSTRUCTED = "NotObstructed"
    NOT_APPLICABLE = "NotApplicable"


def central_weight_obstruction(g: PlumbingGraph) -> Obstruction:
    """Central-weight test for Seifert fibered homology spheres.

    The graph is first reduced to normal form.  Only negative-definite
    unimodular stars with at least three arms qualify; for those a central
    weight other than -1 means the boundary cannot bound a homology ball.
    """
    from .calculus import reduce_to_normal_form

    h = reduce_to_normal_form(g).final_graph
    if len(h) == 0 or not h.is_connected():
        return Obstruction.NOT_APPLICABLE
    nodes = [v for v in h.vertices if h.valence(v) >= 3]
    if len(nodes) != 1:
        return Obstruction.NOT_APPLICABLE
    if not (is_unimodular(h) and is_negative_definite(h)):
        return Obstruction.NOT_APPLICABLE
    if h.weight(nodes[0]) != -1:
        return Obstruction.OBSTRUCTED
    return Obstruction.NOT_OBSTRUCTED


def same_brieskorn(g: PlumbingGraph, exps: Sequence[int]) -> bool:
    """True when ``g`` is literally isomorphic to the Brieskorn plumbing."""
    return canonical_code(g).code == canonical_code(brieskorn_plumbing(*exps)).code
