from fractions import Fraction
from math import comb

import pytest

from mcp_ortofree.core.constructions import (
    CONSTRUCTIONS,
    binary_distance_code,
    build_construction,
    corner_free_set,
    corner_parameters,
    s3_exact,
    s3_padded,
    s_lower_augmented,
    s_lower_basic,
    solve_ab,
    t_lower_augmented,
    t_lower_even,
    to_pm_one,
)
from mcp_ortofree.core.kinds import ConfigurationKind
from mcp_ortofree.core.pointset import point_set
from mcp_ortofree.core.predicates import scan_set
from mcp_ortofree.utils.validators import DomainError

FREE_CASES = [
    ("corner-free", {"n": 8, "q": 3, "k": 2}, "corner", 2),
    ("corner-free", {"n": 6, "q": 3, "k": 3}, "corner", 3),
    ("corner-free", {"n": 7, "q": 5, "k": 3}, "corner", 3),
    ("right-angle-free", {"n": 6, "q": 5}, "right-angle", None),
    ("standard-basis", {"n": 4, "q": 5}, "right-angle", None),
    ("s-lower-basic", {"n": 6, "q": 5}, "self-orth", None),
    ("s-lower-augmented", {"n": 3, "q": 3}, "self-orth", None),
    ("s3-exact", {"n": 5}, "self-orth", None),
    ("s3-padded", {"n": 6}, "self-orth", None),
    ("s3-padded", {"n": 7}, "self-orth", None),
    ("binary-distance", {"n": 5}, "hamming", None),
    ("t-lower-even", {"n": 4, "q": 3}, "hamming", None),
    ("t-lower-augmented", {"n": 5, "q": 3}, "hamming", None),
    ("t-lower-augmented", {"n": 4, "q": 5}, "hamming", None),
]


@pytest.mark.parametrize("name,params,prop,k", FREE_CASES)
def test_constructions_avoid_their_configuration(name, params, prop, k):
    A = build_construction(name, **params)
    report = scan_set(A, prop, k)
    assert report.ok, report.violation


def test_registry_names():
    assert set(CONSTRUCTIONS) == {
        "corner-free", "right-angle-free", "standard-basis", "s-lower-basic",
        "s-lower-augmented", "s3-exact", "s3-padded", "binary-distance",
        "t-lower-even", "t-lower-augmented",
    }


@pytest.mark.parametrize("n", [2, 5, 8])
def test_s3_exact_size(n):
    A = s3_exact(n)
    assert len(A) == comb(n + 3, 2) - 1
    assert A.claimed_property is ConfigurationKind.SELF_ORTHOGONAL_DIFF


def test_s3_exact_requires_residue_two():
    with pytest.raises(DomainError) as exc:
        s3_exact(4)
    assert exc.value.field == "n"


def test_s3_padded_embeds_core():
    A = s3_padded(6)
    assert A.n == 6 and len(A) == 27
    assert all(v.entries[5] == 0 for v in A)
    assert len(s3_padded(4)) == 9
    with pytest.raises(DomainError):
        s3_padded(5)


def test_s_lower_basic_size():
    assert len(s_lower_basic(6, 5)) == comb(6, 4)
    with pytest.raises(DomainError):
        s_lower_basic(3, 5)


@pytest.mark.parametrize("n,q,expected", [(2, 3, (0, 1)), (3, 3, (2, 1)), (5, 3, (0, 1)), (7, 5, (0, 2)), (6, 3, (2, 1))])
def test_solve_ab_lexicographic(n, q, expected):
    assert solve_ab(n, q) == expected


def test_solve_ab_without_solution():
    assert solve_ab(1, 3) is None
    with pytest.raises(DomainError):
        s_lower_augmented(4, 3)


def test_s_lower_augmented_classes():
    A = s_lower_augmented(3, 3)
    assert len(A) == 6
    assert [v.entries for v in A][3:] == [(2, 1, 1), (1, 2, 1), (1, 1, 2)]
    assert A.provenance["params"]["a"] == 2


def test_corner_parameters():
    assert corner_parameters(3, 2) == (2, Fraction(1))
    assert corner_parameters(5, 3) == (3, Fraction(2))


def test_corner_free_set_sizes():
    A = corner_free_set(8, 3, 2)
    assert len(A) == 4
    assert A.claimed_k == 2
    with pytest.raises(DomainError):
        corner_free_set(1, 3, 2)
    with pytest.raises(DomainError):
        corner_free_set(5, 3, 1)


def test_corner_free_set_shuffled_is_reproducible():
    first = corner_free_set(10, 5, 2, order="shuffled", seed=3)
    second = corner_free_set(10, 5, 2, order="shuffled", seed=3)
    assert first.vectors == second.vectors
    assert scan_set(first, "right-angle").ok


def test_binary_and_even_codes():
    assert len(binary_distance_code(4)) == 7
    assert len(t_lower_even(4, 3)) == 7
    assert len(t_lower_augmented(5, 3)) == 16
    with pytest.raises(DomainError):
        t_lower_augmented(4, 3)


def test_alternative_alphabet():
    A = t_lower_even(4, 3, alphabet=(2, 1))
    assert {e for v in A for e in v.entries} <= {1, 2}
    assert scan_set(A, "hamming").ok
    with pytest.raises(DomainError):
        t_lower_even(4, 3, alphabet=(1, 4))


def test_pm_one_embedding():
    A = to_pm_one(t_lower_even(2, 3))
    assert [v.entries for v in A] == [(2, 2), (1, 1)]
    with pytest.raises(DomainError):
        to_pm_one(point_set([[2, 0]], 3))


def test_build_construction_parameters():
    assert len(build_construction("s3_exact", n=5, q=7)) == 27
    with pytest.raises(DomainError) as exc:
        build_construction("corner-free", n=5, q=3)
    assert exc.value.field == "k"
    with pytest.raises(DomainError):
        build_construction("projective-plane", n=5)


def test_provenance_json_is_stringly_typed():
    meta = corner_free_set(8, 3, 2).provenance_json()
    assert meta["construction"] == "corner-free"
    assert meta["parameters"]["cap"] == "1"
    assert meta["size"] == "4"
    assert meta["claimed_property"] == "k-right-corner"
