from itertools import permutations

import numpy as np
import pytest

from qkostant.coeff import LaurentScalar
from qkostant.freealg import NCPolynomial, parse_expr
from qkostant.kostant import evaluate_commutative
from qkostant.mutation import build_system, multiply
from qkostant.qminors import (
    MinorSpec,
    delta_d,
    delta_d_prime,
    delta_d_t,
    qdet,
    qdet_principal,
    quantum_minor,
)


def P(text, n):
    return parse_expr(text, n)


def test_principal_examples():
    assert qdet_principal(MinorSpec(2, (1, 2))) == P("x[1,1]*x[2,2] - q*x[1,2]*x[2,1]", 2)
    assert qdet_principal((2,), 3) == P("x[2,2]", 3)
    d3 = qdet(3)
    assert len(d3.words()) == 6 and d3.is_standard()


def test_qdet3_classical():
    M = [[2, -1, 3], [0, 4, 1], [5, 2, -2]]
    assert evaluate_commutative(qdet(3), M) == round(np.linalg.det(np.array(M, dtype=float)))


def test_minor_coefficients_are_signed_q_powers():
    m = quantum_minor(3, (1, 2, 3), (1, 2, 3))
    for perm in permutations(range(3)):
        l = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
        w = tuple(r * 3 + perm[r] for r in range(3))
        assert m.coefficient(w) == LaurentScalar.q(l, (-1) ** l)


def test_minorspec_validation():
    for bad in [(), (2, 1), (0, 1), (1, 4)]:
        with pytest.raises(ValueError):
            MinorSpec(3, bad)


def test_delta_examples():
    assert delta_d(2, 1) == P("x[1,1] + x[2,2]", 2)
    assert delta_d(2, 2) == qdet(2)
    assert len(delta_d(3, 2).words()) == 6
    with pytest.raises(ValueError):
        delta_d(2, 3)
    with pytest.raises(ValueError):
        delta_d(2, 0)


def test_delta_prime_examples():
    assert delta_d_prime(2, 1) == P("q^-2*x[1,1] + q^-4*x[2,2]", 2)
    assert delta_d_prime(1, 1) == P("q^-2*x[1,1]", 1)
    assert delta_d_prime(2, 2) == qdet(2).scale(LaurentScalar.q(-6))


def test_delta_t():
    for n in (2, 3, 4):
        for d in range(1, n + 1):
            assert delta_d_t(n, d, 1) == delta_d(n, d)
    # top stage keeps only the identity permutation
    assert delta_d_t(3, 2, 3) == P("x[1,1]*x[2,2] + x[1,1]*x[3,3] + x[2,2]*x[3,3]", 3)
    with pytest.raises(ValueError):
        delta_d_t(3, 1, 4)


@pytest.mark.parametrize("n", [2, 3])
def test_qdet_central(n):
    S = build_system(n, 1)
    D = qdet(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            x = NCPolynomial.x(i, j, n)
            assert multiply(D, x, S) == multiply(x, D, S)
