"""Quantum minors and the invariant generators Delta_d, Delta'_d, Delta_d^(t)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .coeff import LaurentScalar
from .freealg import NCPolynomial, gen, inversions


@dataclass(frozen=True)
class MinorSpec:
    n: int
    rows_cols: tuple[int, ...]

    def __post_init__(self):
        I = tuple(self.rows_cols)
        if not I:
            raise ValueError("a minor needs a nonempty index set")
        if any(b <= a for a, b in zip(I, I[1:])):
            raise ValueError(f"index set {I} must be strictly increasing")
        if I[0] < 1 or I[-1] > self.n:
            raise ValueError(f"index set {I} out of range 1..{self.n}")
        object.__setattr__(self, "rows_cols", I)


def _sign_q(length: int) -> LaurentScalar:
    # (-q)^l
    return LaurentScalar.q(length, (-1) ** length)


def quantum_minor(n: int, rows, cols, max_displacement: int | None = None) -> NCPolynomial:
    """sum_w (-q)^{l(w)} x[r1, c_w(1)] ... x[rd, c_w(d)] over permutations w.

    Rows are taken in increasing order, so every word is already standard.
    ``max_displacement`` keeps only w with |r_k - c_w(k)| <= bound.
    """
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("a quantum minor needs as many rows as columns")
    terms = {}
    for perm in permutations(range(len(cols))):
        if max_displacement is not None and any(
            abs(r - cols[p]) > max_displacement for r, p in zip(rows, perm)
        ):
            continue
        w = tuple(gen(r, cols[p], n) for r, p in zip(rows, perm))
        terms[w] = _sign_q(inversions(perm))
    return NCPolynomial(n, terms)


def qdet_principal(minor: MinorSpec | tuple, n: int | None = None) -> NCPolynomial:
    if not isinstance(minor, MinorSpec):
        minor = MinorSpec(n, tuple(minor))
    I = minor.rows_cols
    return quantum_minor(minor.n, I, I)


def qdet(n: int) -> NCPolynomial:
    return quantum_minor(n, range(1, n + 1), range(1, n + 1))


def _check_d(n: int, d: int):
    if not 1 <= d <= n:
        raise ValueError(f"d={d} out of range 1..{n}")


def delta_d(n: int, d: int) -> NCPolynomial:
    """Sum of the principal d x d quantum minors."""
    _check_d(n, d)
    out = NCPolynomial.zero(n)
    for I in combinations(range(1, n + 1), d):
        out = out + quantum_minor(n, I, I)
    return out


def delta_d_prime(n: int, d: int) -> NCPolynomial:
    """Principal minors weighted by q^(-2 * sum(I))."""
    _check_d(n, d)
    out = NCPolynomial.zero(n)
    for I in combinations(range(1, n + 1), d):
        out = out + quantum_minor(n, I, I).scale(LaurentScalar.q(-2 * sum(I)))
    return out


def delta_d_t(n: int, d: int, t: int) -> NCPolynomial:
    """Delta_d restricted to permutations moving no index by more than n - t."""
    _check_d(n, d)
    if not 1 <= t <= n:
        raise ValueError(f"stage t={t} out of range 1..{n}")
    out = NCPolynomial.zero(n)
    for I in combinations(range(1, n + 1), d):
        out = out + quantum_minor(n, I, I, max_displacement=n - t)
    return out
