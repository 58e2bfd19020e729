import random

import pytest
from hypothesis import given, settings

from helpers import all_trees, random_tree, relabel, trees
from plumbtool.calculus import (
    FREE,
    MoveKind,
    Verdict,
    applicable_moves,
    blow_down,
    blow_up,
    reduce_step,
    reduce_to_normal_form,
    replay,
    same_boundary,
    undo,
    zero_chain_absorb,
)
from plumbtool.errors import IllegalMoveError, InvalidSiteError
from plumbtool.form import graph_determinant, is_negative_definite
from plumbtool.graph import build_graph, canonical_code, chain, is_isomorphic, star
from plumbtool.seifert import brieskorn_plumbing


def terminals(g):
    """Canonical codes of every fixed point reachable in any move order."""
    seen, out, stack = set(), set(), [g]
    while stack:
        h = stack.pop()
        c = canonical_code(h).code
        if c in seen:
            continue
        seen.add(c)
        moves = applicable_moves(h)
        if not moves:
            out.add(c)
        for kind, v in moves:
            stack.append(reduce_step(h, kind, v)[0])
    return out


def all_sites(g):
    return [FREE] + list(g.vertices) + list(g.edges)


# -- single moves --------------------------------------------------------------


@pytest.mark.parametrize("a", [-3, -1, 0, 2])
def test_blow_down_leaf(a):
    h, rec = blow_down(chain([a, -1]), 1)
    assert h == chain([a + 1])
    assert rec.kind is MoveKind.BLOW_DOWN_DEG1


def test_blow_down_middle():
    h, rec = blow_down(chain([-2, -1, -2]), 1)
    assert is_isomorphic(h, chain([-1, -1]))
    assert rec.kind is MoveKind.BLOW_DOWN_DEG2


def test_isolated_vertex_next_to_e8():
    e8 = brieskorn_plumbing(2, 3, 5)
    bigger, rec = blow_up(e8, FREE)
    assert graph_determinant(bigger) == -1
    h, rec2 = blow_down(bigger, rec.created)
    assert rec2.kind is MoveKind.BLOW_DOWN_DEG0
    assert h == e8 and graph_determinant(h) == 1


@pytest.mark.parametrize(
    "g, v",
    [(chain([-2, -2]), 0), (star(-1, [[-2], [-3], [-7]]), 0), (chain([-1]), 5)],
)
def test_blow_down_illegal(g, v):
    with pytest.raises(IllegalMoveError):
        blow_down(g, v)


def test_leaf_blow_up():
    h, rec = blow_up(chain([-4]), 0)
    assert h == chain([-5, -1])
    assert rec.created == 1


@pytest.mark.parametrize("site", [(0, 2), 9, "x", (0, 1, 2)])
def test_blow_up_invalid_site(site):
    with pytest.raises(InvalidSiteError):
        blow_up(chain([-2, -2, -2]), site)


@pytest.mark.parametrize("a, b", [(-2, -3), (1, -1), (0, 0)])
def test_zero_chain_absorb(a, b):
    h, _ = zero_chain_absorb(chain([a, 0, b]), 1)
    assert h == chain([a + b])


def test_zero_chain_absorb_keeps_other_edges():
    g = build_graph([-2, 0, -3, -5, -7], [(0, 1), (1, 2), (2, 3), (2, 4)])
    h, _ = zero_chain_absorb(g, 1)
    assert is_isomorphic(h, star(-5, [[-5], [-7]]))
    assert abs(graph_determinant(h)) == abs(graph_determinant(g))


@pytest.mark.parametrize("g, v", [(chain([0]), 0), (chain([-1, 0]), 1), (chain([-1, -2, -1]), 1)])
def test_zero_chain_absorb_illegal(g, v):
    with pytest.raises(IllegalMoveError):
        zero_chain_absorb(g, v)


def test_zero_vertex_after_blow_down_is_fixed_point():
    h, _ = blow_down(chain([-1, -1]), 1)
    assert h == chain([0])
    assert applicable_moves(h) == []


# -- reduction -------------------------------------------------------------------


def test_reduce_minus_two_minus_one_minus_two():
    rep = reduce_to_normal_form(chain([-2, -1, -2]))
    assert rep.reached_fixed_point
    assert is_isomorphic(rep.final_graph, chain([0]))
    assert len(rep.moves) == 2


def test_reduce_star_unchanged():
    g = star(-1, [[-2], [-3], [-7]])
    rep = reduce_to_normal_form(g)
    assert rep.final_graph == g and rep.moves == []


def test_reduce_through_zero_chains_replays():
    g = chain([-3, 0, 3, 0, -5])
    rep = reduce_to_normal_form(g)
    assert replay(g, rep.moves) == rep.final_graph
    assert abs(graph_determinant(rep.final_graph)) == abs(graph_determinant(g))


def test_replay_rejects_foreign_log():
    rep = reduce_to_normal_form(chain([-2, -1, -2]))
    with pytest.raises(IllegalMoveError):
        replay(chain([-2, -2, -2]), rep.moves)


def test_undo_inverts_every_recorded_step():
    rng = random.Random(5)
    for _ in range(100):
        g = random_tree(rng, rng.randint(1, 10), -3, 1)
        rep = reduce_to_normal_form(g)
        h = rep.final_graph
        for rec in reversed(rep.moves):
            h = undo(h, rec)
        assert is_isomorphic(h, g)


def test_move_soundness_200_trees():
    rng = random.Random(12)
    failures = 0
    for _ in range(200):
        g = random_tree(rng, rng.randint(1, 12), -4, 2)
        d = graph_determinant(g)
        code = canonical_code(g).code
        for site in all_sites(g):
            h, rec = blow_up(g, site)
            failures += graph_determinant(h) != -d
            back, _ = blow_down(h, rec.created)
            failures += canonical_code(back).code != code
            failures += undo(h, rec) != g
        rep = reduce_to_normal_form(g)
        cur = g
        for rec in rep.moves:
            cur = replay(cur, [rec])
            failures += abs(graph_determinant(cur)) != abs(d)
    assert failures == 0


@settings(max_examples=150, deadline=None)
@given(trees(max_size=12, lo=-3, hi=1))
def test_reduction_step_bound(g):
    zeros = sum(1 for v in g.vertices if g.weight(v) == 0 and g.valence(v) == 2)
    rep = reduce_to_normal_form(g)
    assert len(rep.moves) <= len(g) + zeros
    assert len(rep.final_graph) <= len(g) - len(rep.moves)
    assert applicable_moves(rep.final_graph) == []


@settings(max_examples=150, deadline=None)
@given(trees(max_size=9, lo=-3, hi=1))
def test_reduction_depends_only_on_isomorphism_class(g):
    rng = random.Random(len(g))
    h = relabel(g, rng)
    a = canonical_code(reduce_to_normal_form(g).final_graph).code
    b = canonical_code(reduce_to_normal_form(h).final_graph).code
    assert a == b


# -- confluence -------------------------------------------------------------------


@pytest.mark.parametrize(
    "weights, outcomes",
    [
        ((-1, 0, -1), {(2,), (-2,)}),
        ((-2, -1, -1), {(1,), (-2, 0)}),
    ],
)
def test_reduction_is_not_confluent_in_general(weights, outcomes):
    g = chain(list(weights))
    codes = terminals(g)
    assert codes == {canonical_code(chain(list(o))).code for o in outcomes}
    # the different fixed points still share |det|
    assert len({abs(graph_determinant(chain(list(o)))) for o in outcomes}) == 1


def test_confluence_exhaustive_negative_definite_small():
    checked = 0
    for g in all_trees(5, (-3, -2, -1)):
        if not is_negative_definite(g):
            continue
        checked += 1
        t = terminals(g)
        assert t == {canonical_code(reduce_to_normal_form(g).final_graph).code}
    assert checked > 1000


@settings(max_examples=300, deadline=None)
@given(trees(max_size=9, lo=-3, hi=-1))
def test_confluence_negative_definite_up_to_nine(g):
    if is_negative_definite(g):
        assert len(terminals(g)) == 1


# -- boundary comparison ----------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(trees(max_size=9, lo=-3, hi=-1))
def test_blow_up_gives_same_boundary(g):
    # blow-ups keep a definite form definite, where reduction is confluent
    if not is_negative_definite(g):
        return
    for site in all_sites(g):
        assert same_boundary(g, blow_up(g, site)[0]) is Verdict.SAME


@pytest.mark.parametrize("exps", [(2, 3, 5), (2, 3, 7), (3, 4, 5)])
def test_brieskorn_vs_every_blow_up(exps):
    g = brieskorn_plumbing(*exps)
    for site in all_sites(g):
        assert same_boundary(g, blow_up(g, site)[0]) is Verdict.SAME


def test_indefinite_blow_up_can_stall_at_other_fixed_point():
    # (0, 0) and its leaf blow-up both bound S^3, but greedy reduction of
    # the blow-up lands on a different fixed point
    g = chain([0, 0])
    h = blow_up(g, 0)[0]
    assert abs(graph_determinant(g)) == abs(graph_determinant(h)) == 1
    assert same_boundary(g, h) is not Verdict.DIFFERENT


def test_e8_vs_a2_different():
    assert same_boundary(brieskorn_plumbing(2, 3, 5), chain([-2, -2])) is Verdict.DIFFERENT


def test_different_seifert_data_same_det():
    assert same_boundary(brieskorn_plumbing(2, 3, 7), brieskorn_plumbing(2, 3, 11)) is Verdict.DIFFERENT


def test_unknown_for_complicated_shapes():
    # two-node graphs with equal |det| cannot be told apart by reduction
    g1 = build_graph([-2, -2, -2, -2, -2, -2], [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    g2 = build_graph([-2, -2, -2, -2, -2, -3], [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    assert same_boundary(g1, g2) in (Verdict.UNKNOWN, Verdict.DIFFERENT)
    assert same_boundary(g1, g1) is Verdict.SAME


def test_seifert_brieskorn_blow_ups_same():
    g = brieskorn_plumbing(3, 4, 5)
    h = blow_up(blow_up(g, (0, 1))[0], 3)[0]
    assert same_boundary(h, g) is Verdict.SAME
