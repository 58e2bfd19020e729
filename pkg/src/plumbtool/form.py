"""Intersection forms of plumbing graphs and their exact invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .graph import PlumbingGraph


@dataclass(frozen=True)
class IntegerSymmetricMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError("matrix must be square")
            for j in range(i):
                if row[j] != self.entries[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerSymmetricMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


class SignatureTriple(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus


def intersection_matrix(g: PlumbingGraph) -> IntegerSymmetricMatrix:
    """Weights on the diagonal, 1 for each edge, rows in insertion order."""
    idx = g.index_of()
    n = len(idx)
    rows = [[0] * n for _ in range(n)]
    for v, i in idx.items():
        rows[i][i] = g.weight(v)
    for u, v in g.edges:
        rows[idx[u]][idx[v]] = 1
        rows[idx[v]][idx[u]] = 1
    return IntegerSymmetricMatrix.from_rows(rows)


def determinant(m: IntegerSymmetricMatrix | Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination (0x0 gives 1)."""
    rows = [list(r) for r in (m.entries if isinstance(m, IntegerSymmetricMatrix) else m)]
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                ri[j] = (pivot * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def signature(m: IntegerSymmetricMatrix | Sequence[Sequence[int]]) -> SignatureTriple:
    """Exact inertia by symmetric (congruence) elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in (m.entries if isinstance(m, IntegerSymmetricMatrix) else m)]
    plus = minus = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                plus += 1
            else:
                minus += 1
            rest = [i for i in range(n) if i != piv]
            a = [[a[i][j] - a[i][piv] * a[piv][j] / d for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            break
        # zero diagonal with a nonzero off-diagonal entry: hyperbolic plane
        i, j = pair
        x = a[i][j]
        plus += 1
        minus += 1
        rest = [k for k in range(n) if k not in pair]
        # Schur complement with block [[0, x], [x, 0]] whose inverse is [[0, 1/x], [1/x, 0]]
        a = [
            [a[p][q] - (a[p][i] * a[j][q] + a[p][j] * a[i][q]) / x for q in rest]
            for p in rest
        ]
    return SignatureTriple(plus, minus, len(a))


def _tree_determinant(g: PlumbingGraph) -> int:
    """Exact determinant of a forest's form by a subtree recursion.

    For a subtree rooted at v with children c, det = w(v) * prod det(c)
    minus, for each child, det(c with its root deleted) times the product
    of the other children's dets.
    """
    total = 1
    for comp in g.components():
        root = comp[0]
        order, parent = [root], {root: None}
        for v in order:
            for u in g.neighbors(v):
                if u not in parent:
                    parent[u] = v
                    order.append(u)
        full, cut = {}, {}
        for v in reversed(order):
            kids = [u for u in g.neighbors(v) if u != parent[v]]
            prod_all = 1
            for c in kids:
                prod_all *= full[c]
            acc = g.weight(v) * prod_all
            for i, c in enumerate(kids):
                others = 1
                for j, c2 in enumerate(kids):
                    if j != i:
                        others *= full[c2]
                acc -= cut[c] * others
            full[v], cut[v] = acc, prod_all
        total *= full[root]
    return total


def graph_determinant(g: PlumbingGraph) -> int:
    return _tree_determinant(g)


def _tree_inertia(g: PlumbingGraph) -> SignatureTriple | None:
    """Inertia by eliminating leaves towards a root, O(n) for a forest.

    Returns None if a zero pivot turns up; the caller then falls back to
    the general elimination.
    """
    d = {v: Fraction(g.weight(v)) for v in g.vertices}
    plus = minus = 0
    for comp in g.components():
        root = comp[0]
        order, parent = [root], {root: None}
        for v in order:
            for u in g.neighbors(v):
                if u not in parent:
                    parent[u] = v
                    order.append(u)
        for v in reversed(order):
            if d[v] == 0:
                return None
            if d[v] > 0:
                plus += 1
            else:
                minus += 1
            if parent[v] is not None:
                d[parent[v]] -= 1 / d[v]
    return SignatureTriple(plus, minus, 0)


def graph_signature(g: PlumbingGraph) -> SignatureTriple:
    fast = _tree_inertia(g)
    if fast is not None:
        return fast
    return signature(intersection_matrix(g))


def is_unimodular(g: PlumbingGraph) -> bool:
    return abs(graph_determinant(g)) == 1


def is_negative_definite(g: PlumbingGraph) -> bool:
    return graph_signature(g) == (0, len(g), 0)


def is_homology_sphere(g: PlumbingGraph) -> bool:
    """The boundary is an integral homology sphere iff the form is unimodular."""
    return is_unimodular(g)


def form_summary(g: PlumbingGraph) -> dict:
    """Everything the det/sig/is-hs commands report, as a JSON-ready dict."""
    m = intersection_matrix(g)
    d = determinant(m)
    s = graph_signature(g)
    return {
        "det": d,
        "signature": [s.n_plus, s.n_minus, s.n_zero],
        "unimodular": abs(d) == 1,
        "negative_definite": s == (0, m.dim, 0),
        "homology_sphere": abs(d) == 1,
    }
