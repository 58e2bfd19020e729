import random

import pytest
import sympy
from hypothesis import given, settings

from helpers import cofactor_det, descartes_inertia, random_tree, symmetric_matrices, trees
from plumbtool.form import (
    IntegerSymmetricMatrix,
    determinant,
    form_summary,
    graph_determinant,
    graph_signature,
    intersection_matrix,
    is_negative_definite,
    signature,
)
from plumbtool.graph import build_graph, chain, star
from plumbtool.seifert import brieskorn_plumbing


def test_intersection_matrix_layout():
    g = build_graph([-2, -3, -5], [(0, 1), (1, 2)])
    assert intersection_matrix(g).tolist() == [[-2, 1, 0], [1, -3, 1], [0, 1, -5]]


def test_matrix_must_be_symmetric():
    with pytest.raises(ValueError):
        IntegerSymmetricMatrix.from_rows([[1, 2], [3, 4]])


def test_e8():
    e8 = brieskorn_plumbing(2, 3, 5)
    assert len(e8) == 8
    assert graph_determinant(e8) == 1
    assert graph_signature(e8) == (0, 8, 0)


@pytest.mark.parametrize(
    "weights, det",
    [([], 1), ([-2], -2), ([-2, -2], 3), ([-2] * 4, 5), ([-1, -1], 0), ([0], 0)],
)
def test_chain_determinants(weights, det):
    assert graph_determinant(chain(weights)) == det


def test_star_237():
    assert graph_determinant(star(-1, [[-2], [-3], [-7]])) == 1


def test_hyperbolic_plane():
    # zero diagonal everywhere forces the hyperbolic-block branch
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) == (1, 1, 1)
    assert signature([[0, 0], [0, 0]]) == (0, 0, 2)


def test_determinant_pivoting():
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[0, 0], [0, 5]]) == 0


def test_determinant_oracle_500_trees():
    rng = random.Random(2024)
    for _ in range(500):
        g = random_tree(rng, rng.randint(1, 7))
        assert graph_determinant(g) == cofactor_det(intersection_matrix(g).tolist())


def test_signature_oracle_500_matrices():
    rng = random.Random(99)
    for _ in range(500):
        n = rng.randint(0, 6)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                # sparse entries make zero pivots and singular forms common
                m[i][j] = m[j][i] = rng.choice([0, 0, 0, 1, -1, 2, -3])
        assert signature(m) == descartes_inertia(m)


@settings(max_examples=200, deadline=None)
@given(symmetric_matrices(max_dim=6))
def test_signature_matches_charpoly(m):
    assert signature(m) == descartes_inertia(m)


@settings(max_examples=200, deadline=None)
@given(symmetric_matrices(max_dim=7))
def test_determinant_matches_sympy(m):
    expected = int(sympy.Matrix(m).det()) if m else 1
    assert determinant(m) == expected


@settings(max_examples=200, deadline=None)
@given(trees(max_size=10))
def test_rank_and_determinant_agree(g):
    s = graph_signature(g)
    assert s.n_plus + s.n_minus + s.n_zero == len(g)
    assert (s.n_zero == 0) == (graph_determinant(g) != 0)
    # sign of det is (-1)^(n_minus) on nondegenerate forms
    if s.n_zero == 0:
        assert (graph_determinant(g) > 0) == (s.n_minus % 2 == 0)


@settings(max_examples=100, deadline=None)
@given(trees(max_size=8, lo=-6, hi=-2))
def test_definite_forms_have_det_sign_of_dimension(g):
    if is_negative_definite(g):
        assert (-1) ** len(g) * graph_determinant(g) > 0


def test_affine_d4_is_degenerate():
    # weights <= -2 alone do not force definiteness
    g = star(-2, [[-2]] * 4)
    assert graph_determinant(g) == 0
    assert graph_signature(g) == (0, 4, 1)


def test_form_summary_keys():
    s = form_summary(brieskorn_plumbing(2, 3, 7))
    assert s == {
        "det": 1,
        "signature": [0, 4, 0],
        "unimodular": True,
        "negative_definite": True,
        "homology_sphere": True,
    }


@settings(max_examples=300, deadline=None)
@given(trees(max_size=9, lo=-3, hi=2))
def test_tree_elimination_matches_general_signature(g):
    assert graph_signature(g) == signature(intersection_matrix(g))


@settings(max_examples=300, deadline=None)
@given(trees(max_size=14, lo=-3, hi=2))
def test_tree_recursion_matches_bareiss(g):
    assert graph_determinant(g) == determinant(intersection_matrix(g))
