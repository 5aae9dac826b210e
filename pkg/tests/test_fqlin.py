import pytest

from mcp_ortofree.core.fqlin import (
    FIELD_OPS,
    BoundValue,
    FieldSpec,
    FVec,
    basis_vector,
    binomial,
    dot,
    dump_vectors,
    fe_arith,
    fvec,
    monomial_count,
    parse_vectors,
    scale,
    vadd,
    vsub,
    weight,
    zero_vector,
)
from mcp_ortofree.utils.validators import FieldArithmeticError, FormatError, UnsupportedFieldError

from .conftest import vec

PRIMES = (3, 5, 7, 11)


def test_inverse_exhaustive_small_fields():
    for q in PRIMES:
        for a in range(1, q):
            inv = fe_arith("inv", a, 0, q)
            assert fe_arith("mul", a, inv, q) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(FieldArithmeticError):
        fe_arith("inv", 0, 0, 5)


def test_field_axioms_exhaustive():
    for q in (3, 5):
        for a in range(q):
            assert fe_arith("add", a, fe_arith("neg", a, 0, q), q) == 0
            for b in range(q):
                assert fe_arith("add", a, b, q) == fe_arith("add", b, a, q)
                assert fe_arith("sub", fe_arith("add", a, b, q), b, q) == a
                for c in range(q):
                    left = fe_arith("mul", a, fe_arith("add", b, c, q), q)
                    right = fe_arith("add", fe_arith("mul", a, b, q), fe_arith("mul", a, c, q), q)
                    assert left == right


def test_pow_fermat_and_negative_exponent():
    for q in PRIMES:
        for a in range(1, q):
            assert fe_arith("pow", a, q - 1, q) == 1
            assert fe_arith("pow", a, -1, q) == fe_arith("inv", a, 0, q)
    assert set(FIELD_OPS) == {"add", "sub", "mul", "neg", "inv", "pow"}


def test_unknown_op_raises():
    with pytest.raises(FieldArithmeticError):
        fe_arith("div", 1, 1, 3)


@pytest.mark.parametrize("q", [2, 4, 9, 15, 1, 0])
def test_unsupported_moduli(q):
    with pytest.raises(UnsupportedFieldError):
        FieldSpec(q)


def test_prime_power_message_mentions_extension_fields():
    with pytest.raises(UnsupportedFieldError) as info:
        FieldSpec(9)
    assert "potencia de primo" in info.value.message


def test_dot_self_orthogonal_all_ones():
    assert dot(vec([1, 1, 1]), vec([1, 1, 1])) == 0
    assert dot(vec([1, 2, 0], 5), vec([3, 4, 1], 5)) == (3 + 8) % 5


def test_dot_length_mismatch_raises():
    with pytest.raises(FieldArithmeticError):
        dot(vec([1, 0]), vec([1, 0, 0]))


def test_dot_field_mismatch_raises():
    with pytest.raises(FieldArithmeticError):
        dot(vec([1, 0], 3), vec([1, 0], 5))


def test_vector_arithmetic():
    f3 = FieldSpec(3)
    x, y = vec([1, 2, 0]), vec([2, 2, 1])
    assert vsub(x, y) == vec([2, 0, 2])
    assert vadd(x, y) == vec([0, 1, 1])
    assert x - y == vsub(x, y)
    assert scale(2, x) == vec([2, 1, 0])
    assert weight(x) == 2
    assert zero_vector(3, f3) == vec([0, 0, 0])
    assert basis_vector(1, 3, f3) == vec([0, 1, 0])


def test_fvec_reduces_entries():
    assert fvec([4, -1, 7], FieldSpec(3)).entries == (1, 2, 1)


def test_fvec_rejects_unreduced_entries():
    with pytest.raises(FieldArithmeticError):
        FVec(FieldSpec(3), (0, 3))


def test_binomial_exact_and_out_of_range():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(100, 50).value == 100891344545564193334812497256
    assert monomial_count(2, 2) == 6


def test_binomial_matches_pascal_triangle():
    row = [1]
    for n in range(1, 40):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
        assert [binomial(n, k).value for k in range(n + 1)] == row


def test_bound_value_rejects_negative():
    with pytest.raises(FieldArithmeticError):
        BoundValue(-1, "test")
    assert BoundValue(3, "a") < BoundValue(4, "b")
    assert max(BoundValue(3, "a"), BoundValue(7, "b")).formula_id == "b"


def test_vector_text_format():
    spec, n, vectors = parse_vectors("q=3 n=2\n0,0\n1,2\n")
    assert spec.q == 3 and n == 2
    assert vectors == [vec([0, 0]), vec([1, 2])]
    assert dump_vectors(vectors, spec, n) == "q=3 n=2\n0,0\n1,2\n"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "0,0\n1,1\n",
        "q=3 n=2\n0,0,0\n",
        "q=3 n=2\n0,3\n",
        "q=3 n=2\na,b\n",
    ],
)
def test_malformed_vector_files(text):
    with pytest.raises(FormatError):
        parse_vectors(text)


def test_header_with_prime_power_is_unsupported():
    with pytest.raises(UnsupportedFieldError):
        parse_vectors("q=9 n=1\n0\n")
