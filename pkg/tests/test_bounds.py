import pytest

from mcp_ortofree.core.bounds import (
    FORMULAS,
    TABLE_COLUMNS,
    UPPER,
    allright_upper,
    bounds_table,
    corner_lower_main_term,
    corner_upper_naslund,
    few_dot_products_bound,
    formula_hypothesis,
    lower_bound,
    r_elementary_lower,
    r_naslund_hypothesis,
    r_upper_ge,
    r_upper_main,
    r_upper_naslund,
    right_angle_class_bound,
    s3_exact_term,
    s3_padded_term,
    s_lower_augmented_term,
    s_upper,
    t_lower_general,
    t_lower_special,
    t_upper_divisible,
    t_upper_general,
    upper_bound,
)
from mcp_ortofree.core.fqlin import BoundValue
from mcp_ortofree.core.kinds import ConfigurationKind
from mcp_ortofree.core.search import exact_all_right, exact_R, exact_S, exact_T
from mcp_ortofree.utils.validators import DomainError, FieldArithmeticError, UnsupportedFieldError


@pytest.mark.parametrize(
    "formula,args,expected",
    [
        (s_upper, (2, 3), 9),
        (s_upper, (5, 3), 27),
        (r_upper_naslund, (2, 5), 16),
        (r_upper_naslund, (1, 3), 7),
        (r_upper_ge, (1, 3), 9),
        (r_upper_main, (1, 3), 54),
        (allright_upper, (1, 3), 27),
        (corner_upper_naslund, (2, 3, 2), 10),
        (corner_lower_main_term, (8, 3, 2), 4),
        (few_dot_products_bound, (2, 1), 6),
        (right_angle_class_bound, (1, 3), 4),
        (t_upper_divisible, (6, 3), 16),
        (t_lower_special, (5, 3), 16),
        (t_upper_general, (4, 3), 11),
        (t_lower_general, (4, 3), 7),
        (s_lower_augmented_term, (3, 3), 6),
        (s3_exact_term, (8,), 54),
        (s3_padded_term, (6,), 27),
    ],
)
def test_formula_values(formula, args, expected):
    value = formula(*args)
    assert isinstance(value, BoundValue)
    assert value == expected
    assert value.formula_id == formula.__name__


def test_naslund_negative_region_is_rejected():
    with pytest.raises(DomainError):
        r_upper_naslund(1, 7)


@pytest.mark.parametrize("n,q,holds", [(3, 7, False), (1, 5, False), (4, 7, True), (2, 5, True), (1, 3, True)])
def test_naslund_hypothesis_against_elementary_sets(n, q, holds):
    assert r_elementary_lower(n, q) == max(n, q)
    assert r_naslund_hypothesis(n, q) is holds


def test_naslund_below_elementary_sets_is_not_an_upper_bound():
    assert r_upper_naslund(3, 7) == 2
    assert upper_bound("right-angle", 3, 7) >= 7
    assert upper_bound("right-angle", 1, 5) == r_upper_ge(1, 5)
    rows = bounds_table("right-angle", [3], [7])
    naslund = next(r for r in rows if r.formula_id == "r_upper_naslund")
    assert naslund.hypothesis is False
    assert naslund.to_row()["hypothesis"] == "false"
    assert not naslund.exact


def test_naslund_is_used_where_its_hypothesis_holds():
    assert upper_bound("right-angle", 2, 3) == r_upper_naslund(2, 3) == 11
    assert formula_hypothesis("r_upper_naslund", 2, 3, 2) is True
    assert formula_hypothesis("s_upper", 2, 3, 2) is None


@pytest.mark.parametrize(
    "kind,solver,n,q",
    [
        (ConfigurationKind.RIGHT_ANGLE, exact_R, 1, 3),
        (ConfigurationKind.RIGHT_ANGLE, exact_R, 2, 3),
        (ConfigurationKind.RIGHT_ANGLE, exact_R, 1, 5),
        (ConfigurationKind.RIGHT_ANGLE, exact_R, 1, 7),
        (ConfigurationKind.ALL_RIGHT_TRIANGLE, exact_all_right, 1, 3),
        (ConfigurationKind.ALL_RIGHT_TRIANGLE, exact_all_right, 2, 3),
        (ConfigurationKind.SELF_ORTHOGONAL_DIFF, exact_S, 2, 3),
        (ConfigurationKind.DIVISIBLE_HAMMING, exact_T, 3, 3),
        (ConfigurationKind.DIVISIBLE_HAMMING, exact_T, 4, 3),
    ],
)
def test_usable_upper_formulas_dominate_exact_optimum(kind, solver, n, q):
    result = solver(n, q)
    assert result.proven
    for formula_id, side, evaluator in FORMULAS[kind]:
        if side != UPPER:
            continue
        try:
            value = evaluator(n, q, 2)
        except DomainError:
            continue
        if formula_hypothesis(formula_id, n, q, 2) is False:
            continue
        assert int(value) >= result.optimum, formula_id
    assert int(upper_bound(kind, n, q)) >= result.optimum


def test_preconditions():
    with pytest.raises(DomainError):
        t_upper_divisible(4, 3)
    with pytest.raises(DomainError):
        t_lower_special(4, 3)
    with pytest.raises(DomainError):
        s3_exact_term(4)
    with pytest.raises(UnsupportedFieldError):
        s_upper(3, 9)
    with pytest.raises(UnsupportedFieldError):
        s_upper(3, 2)


def test_bound_value_is_non_negative():
    with pytest.raises(FieldArithmeticError):
        BoundValue(-1, "test")


def test_large_values_stay_exact():
    assert int(t_upper_general(400, 101)) > 2 ** 63


def test_self_orth_table_marks_exact_rows():
    rows = bounds_table("self-orth", [2], [3])
    assert [(r.formula_id, int(r.value)) for r in rows] == [
        ("s_upper", 9),
        ("s_lower_basic_term", 1),
        ("s_lower_augmented_term", 3),
        ("s3_exact_term", 9),
    ]
    assert {r.formula_id for r in rows if r.exact} == {"s_upper", "s3_exact_term"}


def test_table_skips_inapplicable_formulas():
    rows = bounds_table("right-angle", [1], [7])
    ids = [r.formula_id for r in rows]
    assert "r_upper_naslund" not in ids
    assert "r_upper_ge" in ids
    main = next(r for r in rows if r.formula_id == "corner_lower_main_term")
    assert main.main_term and main.floor_division and not main.exact


def test_corner_table_records_hypothesis():
    rows = bounds_table("corner", [3], [3, 5], k=3)
    flags = {(r.q, r.hypothesis) for r in rows if r.formula_id == "corner_upper_naslund"}
    assert flags == {(3, False), (5, True)}
    assert all(r.k == 3 for r in rows)


def test_table_row_shape():
    row = bounds_table("hamming", [6], [3])[0].to_row()
    assert tuple(row) == TABLE_COLUMNS
    assert all(isinstance(v, str) for v in row.values())


def test_table_order_is_q_then_n():
    rows = bounds_table("hamming", range(1, 4), [5, 3])
    assert [(r.q, r.n) for r in rows if r.formula_id == "t_upper_general"] == [
        (5, 1), (5, 2), (5, 3), (3, 1), (3, 2), (3, 3),
    ]


def test_upper_and_lower_bound():
    assert upper_bound("self-orth", 2, 3) == 9
    assert lower_bound("self-orth", 2, 3) == 9
    assert upper_bound("hamming", 6, 3) == 16
    assert lower_bound("corner", 3, 5, 2) is None
