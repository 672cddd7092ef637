import pytest
from hypothesis import given, strategies as st

from qkostant.coeff import ONE, Q, LaurentScalar
from qkostant.freealg import (
    GenIndex,
    NCPolynomial,
    ParseError,
    descent_count,
    exponent_matrix,
    format_expr,
    gen,
    inversions,
    is_standard,
    lex_compare,
    parse_expr,
    rc,
    word,
)

N = 3
words = st.lists(st.integers(0, N * N - 1), max_size=4).map(tuple)
coeffs = st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), min_size=1, max_size=3).map(
    LaurentScalar
)
polys = st.dictionaries(words, coeffs, max_size=4).map(lambda t: NCPolynomial(N, t))


def test_lex_compare_examples():
    assert lex_compare(GenIndex(1, 3, 3), GenIndex(2, 1, 3)) == -1
    assert lex_compare(GenIndex(2, 2, 3), GenIndex(2, 2, 3)) == 0
    assert lex_compare(GenIndex(1, 2, 2), GenIndex(2, 1, 2)) == -1
    assert GenIndex(1, 2, 2) < GenIndex(2, 1, 2)


def test_lex_compare_needs_same_n():
    with pytest.raises(ValueError):
        lex_compare(GenIndex(1, 1, 2), GenIndex(1, 1, 3))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n * n - 1))))
def test_flat_index_roundtrip(nk):
    n, k = nk
    g = GenIndex.from_flat(k, n)
    assert g.flat == k and gen(g.row, g.col, n) == k and rc(k, n) == (g.row, g.col)


def test_genindex_range():
    with pytest.raises(ValueError):
        GenIndex(3, 1, 2)


def test_descent_examples():
    n = 2
    assert descent_count(word([(2, 2), (1, 1)], n)) == 1
    assert descent_count(word([(1, 1), (1, 2), (2, 2)], n)) == 0
    p = NCPolynomial.from_word(word([(2, 2), (1, 1), (1, 2)], n), n) + NCPolynomial.from_word(
        word([(1, 1), (2, 2)], n), n
    )
    assert descent_count(p) == 2
    with pytest.raises(ValueError):
        descent_count(NCPolynomial.zero(n))


@given(words)
def test_standard_iff_no_inversions(w):
    assert is_standard(w) == (inversions(w) == 0)


def test_exponent_matrix():
    assert exponent_matrix(word([(1, 2), (1, 2), (2, 1)], 2), 2) == [[0, 2], [1, 0]]


def test_parse_examples():
    det = parse_expr("x[1,1]*x[2,2] - q*x[1,2]*x[2,1]", 2)
    assert det == NCPolynomial(2, {(0, 3): ONE, (1, 2): -Q})
    assert parse_expr("1", 2) == NCPolynomial.one(2)
    assert parse_expr("x[1,2]^2", 2).words() == [(1, 1)]


def test_format_examples():
    assert format_expr(parse_expr("x[1,1]*x[2,2] - q*x[1,2]*x[2,1]", 2)) == (
        "x[1,1]*x[2,2] - q^1*x[1,2]*x[2,1]"
    )
    assert format_expr(NCPolynomial.zero(2)) == "0"
    p = parse_expr("x[1,3]*x[2,2]*(q - q^-1)", 3)
    assert format_expr(-p) == "-(q^1 - q^-1)*x[1,3]*x[2,2]"


@pytest.mark.parametrize(
    "text",
    ["x[1,2", "x[0,1]", "x[1,1]^-1", "q^", "2 +", "x[1,1] x[2,2]", "x[3,1]"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_expr(text, 2)


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_expr("x[1,1] + x[1,9]", 2)
    assert e.value.pos == 9


@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_expr(format_expr(p), N) == p


@given(polys, polys, polys)
def test_free_algebra_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == NCPolynomial.zero(N)


def test_mixed_n_rejected():
    with pytest.raises(ValueError):
        NCPolynomial.x(1, 1, 2) + NCPolynomial.x(1, 1, 3)
