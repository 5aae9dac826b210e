from dataclasses import replace

import pytest

from mcp_ortofree.core.predicates import scan_set
from mcp_ortofree.core.search import (
    SearchStatus,
    exact_all_right,
    exact_corner,
    exact_pairwise,
    exact_R,
    exact_S,
    exact_search,
    exact_T,
    exact_tuplewise,
    r_instance,
    rank_vector,
    s_instance,
    t_instance,
    unrank,
)
from mcp_ortofree.utils.validators import DomainError


def assert_witness_valid(result, k=None):
    assert len(result.witness) == result.optimum
    assert scan_set(result.witness, result.instance.kind, k).ok


def test_unrank_most_significant_first():
    v = unrank(5, 2, 3)
    assert v.entries == (1, 2)
    assert unrank(0, 2, 3).entries == (0, 0)
    assert unrank(8, 2, 3).entries == (2, 2)
    assert rank_vector(v) == 5
    assert all(rank_vector(unrank(i, 3, 5)) == i for i in range(125))
    with pytest.raises(DomainError):
        unrank(9, 2, 3)


@pytest.mark.parametrize("n,expected", [(3, 4), (4, 8), (5, 16), (6, 16)])
def test_exact_T(n, expected):
    result = exact_T(n, 3)
    assert result.status is SearchStatus.PROVEN_OPTIMAL
    assert result.optimum == expected
    assert_witness_valid(result)


def test_exact_S_small():
    result = exact_S(2, 3)
    assert result.proven
    assert result.optimum == 9
    assert result.root_bound == 9
    assert_witness_valid(result)


@pytest.mark.slow
def test_exact_S_five():
    result = exact_S(5, 3)
    assert result.proven
    assert result.optimum == 27
    assert_witness_valid(result)


def test_rank_bound_can_be_disabled():
    result = exact_S(2, 3, rank_bound_depth=-1)
    assert result.optimum == 9
    assert result.root_bound is None


def test_anchor_does_not_change_optimum():
    anchored = exact_pairwise(s_instance(2, 3), anchor=True)
    free = exact_pairwise(s_instance(2, 3), anchor=False)
    assert anchored.optimum == free.optimum == 9
    assert exact_tuplewise(r_instance(2, 3), anchor=False).optimum == exact_R(2, 3).optimum


def test_coordinate_permutation_keeps_optimum():
    instance = replace(t_instance(4, 3), coordinate_permutation=(3, 1, 0, 2))
    result = exact_pairwise(instance)
    assert result.optimum == 8
    assert_witness_valid(result)
    with pytest.raises(DomainError):
        replace(t_instance(4, 3), coordinate_permutation=(0, 0, 1, 2))


@pytest.mark.parametrize("n,expected", [(1, 3), (2, 3)])
def test_exact_R(n, expected):
    result = exact_R(n, 3)
    assert result.proven
    assert result.optimum == expected
    assert_witness_valid(result)


@pytest.mark.parametrize("n,expected", [(1, 3), (2, 9)])
def test_exact_all_right(n, expected):
    result = exact_all_right(n, 3)
    assert result.proven
    assert result.optimum == expected
    assert_witness_valid(result)


def test_exact_corner_small():
    result = exact_corner(1, 3, 3)
    assert result.proven
    assert result.optimum == 3
    assert_witness_valid(result, k=3)
    assert exact_corner(2, 3, 2).optimum == exact_R(2, 3).optimum


def test_budget_exhaustion_is_reported():
    result = exact_R(2, 5, budget=5)
    assert result.status is SearchStatus.BUDGET_EXHAUSTED
    assert not result.proven
    assert result.nodes_expanded == 6
    assert_witness_valid(result)


def test_same_budget_same_witness():
    first = exact_R(2, 5, budget=200)
    second = exact_R(2, 5, budget=200)
    assert first.witness.vectors == second.witness.vectors
    assert first.nodes_expanded == second.nodes_expanded


def test_universe_limits():
    with pytest.raises(DomainError):
        exact_S(11, 3)
    with pytest.raises(DomainError):
        exact_R(8, 3)


def test_exact_search_dispatch():
    assert exact_search("T", 3, 3).optimum == 4
    assert exact_search("all-right", 1, 3).optimum == 3
    with pytest.raises(DomainError):
        exact_search("corner", 2, 3)
    with pytest.raises(DomainError):
        exact_search("Q", 2, 3)


def test_result_json_is_labelled_derived():
    data = exact_T(3, 3).to_json()
    assert data["label"] == "derived"
    assert data["optimum"] == "4"
    assert data["status"] == "proven-optimal"
    assert data["k"] is None
    assert len(data["witness"]) == 4
