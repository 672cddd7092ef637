from math import comb

import pytest
from hypothesis import given, strategies as st

from qkostant.freealg import word
from qkostant.kostant import (
    candidate_basis,
    certify_freeness,
    classical_oracle_check,
    counting_identity,
    delta_exponents,
    evaluate_commutative,
    hilbert_dims,
    invariant_dims,
    invariant_ring_check,
    principal_minor_sums,
    sample_points,
)
from qkostant.qminors import delta_d


def test_hilbert_examples():
    prof = hilbert_dims(2, 5)
    assert prof.dims_A == [1, 4, 10, 20, 35, 56]
    assert prof.dims_H == [2 * d + 1 for d in range(6)]
    assert prof.dims_I == [1, 1, 2, 2, 3, 3]
    assert hilbert_dims(1, 4).dims_H == [1, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        hilbert_dims(2, -1)


@given(st.integers(1, 5), st.integers(0, 12))
def test_hilbert_identities(n, D):
    prof = hilbert_dims(n, D)
    assert prof.convolution_holds()
    if D >= 1:
        assert prof.dims_A[1] == n * n
    assert all(h >= 0 for h in prof.dims_H)


def test_invariant_dims_partitions():
    assert invariant_dims(3, 6) == [1, 1, 2, 3, 4, 5, 7]


def test_candidate_examples():
    n = 2
    assert set(candidate_basis(n, 1)) == {word([(1, 2)], n), word([(2, 1)], n), word([(2, 2)], n)}
    assert candidate_basis(n, 0) == [()]
    two = candidate_basis(n, 2)
    assert len(two) == 5
    assert word([(2, 2), (2, 2)], n) not in two
    assert all(w == tuple(sorted(w)) for w in two)
    with pytest.raises(ValueError):
        candidate_basis(2, -1)


@pytest.mark.parametrize("n,D", [(1, 6), (2, 10), (3, 7), (4, 4)])
def test_counting_identity(n, D):
    assert all(counting_identity(n, D))


def test_counting_identity_rejects_loose_bound():
    assert not all(counting_identity(2, 3, lambda i: i))


def test_delta_exponents_graded_lex():
    assert delta_exponents(2, 4) == [(0, 2), (2, 1), (4, 0)]
    assert delta_exponents(3, 3) == [(0, 0, 1), (1, 1, 0), (3, 0, 0)]


def test_certify_n1():
    cert = certify_freeness(1, 5)
    assert cert.verdict and all(r.candidate_count == 1 for r in cert.degrees)


def test_certify_n2_exact_and_sampled_agree():
    exact = certify_freeness(2, 6, "exact")
    sampled = certify_freeness(2, 6, "sampled", samples=3, seed=5)
    assert exact.verdict and sampled.verdict
    assert [r.rank for r in exact.degrees] == [r.rank for r in sampled.degrees]
    assert sampled.rank_stable and len(sampled.sampled_points) == 3


def test_certify_right_module():
    assert certify_freeness(2, 4, side="right").verdict


def test_certify_negative_control():
    cert = certify_freeness(2, 4, diag_bound=lambda i: i - 2)
    assert not cert.verdict and cert.first_failure() == 0
    # a loose bound overcounts instead
    cert = certify_freeness(2, 3, diag_bound=lambda i: i)
    assert not cert.verdict
    r = cert.degrees[1]
    assert r.candidate_count > r.dim_A


def test_certify_argument_errors():
    with pytest.raises(ValueError):
        certify_freeness(2, 0)
    with pytest.raises(ValueError):
        certify_freeness(2, 2, "guess")
    with pytest.raises(ValueError):
        certify_freeness(2, 2, "sampled", samples=0)
    with pytest.raises(ValueError):
        certify_freeness(2, 2, side="middle")


def test_certificate_json():
    js = certify_freeness(2, 2).to_json()
    assert js["verdict"] == "pass" and js["elapsed_ms"] is None
    assert js["degrees"][2] == {"d": 2, "dim_A": 10, "candidate_count": 10, "rank": 10, "pass": True}
    assert isinstance(certify_freeness(2, 1, timing=True).elapsed_ms, int)


def test_sample_points():
    pts = sample_points(5, 3)
    assert pts == sample_points(5, 3)
    assert len(set(pts)) == 5
    assert all(p > 0 and p != 1 for p in pts)


def test_invariant_ring_examples():
    assert invariant_ring_check(2, 6).ok
    assert invariant_ring_check(1, 4).ok


def test_classical_examples():
    M = [[1, 2], [3, 4]]
    assert principal_minor_sums(M) == [5, -2]
    assert [evaluate_commutative(delta_d(2, d), M) for d in (1, 2)] == [5, -2]
    for n in (1, 2, 3):
        I = [[int(i == j) for j in range(n)] for i in range(n)]
        assert [evaluate_commutative(delta_d(n, d), I) for d in range(1, n + 1)] == [
            comb(n, d) for d in range(1, n + 1)
        ]


def test_classical_oracle_report():
    rep = classical_oracle_check(3, trials=20, seed=1)
    assert rep.ok and rep.to_json()["verdict"] == "pass"


@pytest.mark.parametrize("n,D", [(2, 8), (3, 5)])
def test_candidate_counts_are_harmonic_dims(n, D):
    prof = hilbert_dims(n, D)
    assert [len(candidate_basis(n, d)) for d in range(D + 1)] == prof.dims_H
