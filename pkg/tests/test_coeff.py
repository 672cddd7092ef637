from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qkostant.coeff import (
    ONE,
    Q,
    QINV,
    ZERO,
    LaurentScalar,
    RationalFunction,
    evaluate_at,
    exact_divide,
    laurent_arith,
    laurent_gcd,
    ratfun_arith,
)

coeffs = st.one_of(st.integers(-5, 5), st.fractions(-5, 5, max_denominator=4))
scalars = st.dictionaries(st.integers(-4, 4), coeffs, max_size=4).map(LaurentScalar)
nonzero = st.dictionaries(
    st.integers(-4, 4), coeffs.filter(bool), min_size=1, max_size=4
).map(LaurentScalar)


def test_examples():
    assert laurent_arith(Q, QINV, "mul") == ONE
    assert laurent_arith(Q - QINV, Q + QINV, "mul") == LaurentScalar({2: 1, -2: -1})
    mq = -Q
    assert laurent_arith(mq**2, mq, "add") == LaurentScalar({2: 1, 1: -1})


def test_evaluate_examples():
    assert evaluate_at(Q - QINV, 1) == 0
    assert evaluate_at(LaurentScalar.q(2), 2) == 4
    assert evaluate_at(-Q, 3) == -3
    with pytest.raises(ValueError):
        Q.evaluate(0)


def test_ratfun_examples():
    d = Q - QINV
    assert ratfun_arith(RationalFunction(1, d), RationalFunction(d), "mul") == RationalFunction(1)
    assert ratfun_arith(RationalFunction(Q), RationalFunction(Q), "div") == RationalFunction(1)
    assert ratfun_arith(RationalFunction(1), RationalFunction(Q), "add") == RationalFunction(ONE + Q)


def test_unknown_op():
    with pytest.raises(ValueError):
        laurent_arith(Q, Q, "div")


def test_text_form():
    assert str(Q - QINV) == "-1*q^-1 + 1*q^1"
    assert str(ZERO) == "0"
    assert str(LaurentScalar({0: Fraction(-1, 2)})) == "-1/2*q^0"


@given(scalars)
def test_text_roundtrip(a):
    assert LaurentScalar.parse(str(a)) == a


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(scalars, scalars, st.sampled_from([Fraction(2), Fraction(3, 7), Fraction(-5, 2)]))
def test_evaluation_is_a_homomorphism(a, b, q0):
    assert (a * b).evaluate(q0) == a.evaluate(q0) * b.evaluate(q0)
    assert (a + b).evaluate(q0) == a.evaluate(q0) + b.evaluate(q0)


@given(scalars, st.sampled_from([2, 3, 5]))
def test_evaluate_mod_matches_rational(a, q0):
    p = 1000003
    v = a.evaluate(q0)
    assert a.evaluate_mod(q0, p) == v.numerator * pow(v.denominator, -1, p) % p


@given(scalars, nonzero)
def test_exact_divide_inverts_multiply(a, b):
    assert exact_divide(a * b, b) == a


def test_exact_divide_rejects():
    with pytest.raises(ValueError):
        exact_divide(ONE + Q, ONE + Q + LaurentScalar.q(2))
    with pytest.raises(ZeroDivisionError):
        exact_divide(Q, ZERO)


def test_gcd():
    a = (ONE + Q) * (ONE - Q)
    b = (ONE + Q) * LaurentScalar.q(-3, 7)
    assert laurent_gcd(a, b) == ONE + Q


@given(nonzero, nonzero, nonzero)
def test_ratfun_field(a, b, c):
    x, y = RationalFunction(a, b), RationalFunction(b, c)
    assert ratfun_arith(ratfun_arith(x, y, "mul"), y, "div") == x
    assert ratfun_arith(x, x, "sub") == RationalFunction(0)
    assert hash(x) == hash(RationalFunction(a * c, b * c))


def test_ratfun_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1, 0)


def test_negative_power_only_for_monomials():
    assert (LaurentScalar.q(2, 3) ** -1) == LaurentScalar.q(-2, Fraction(1, 3))
    with pytest.raises(ValueError):
        (ONE + Q) ** -1
