"""Freeness certificate for O(M_q(n)) over its adjoint invariants.

In each degree d the products (monomial in Delta_1..Delta_n) * (candidate
word) are expanded in the PBW basis and the coefficient matrix is checked to
be square of size dim A_d and of full rank.  The matrix is block diagonal for
the grading by (row content - column content), since every Delta_d has weight
zero, so ranks are computed block by block.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Callable

import numpy as np

from .coeff import LaurentScalar
from .freealg import NCPolynomial, Word, format_expr
from .hopf import is_invariant
from .linalg import rank_at, rank_generic
from .mutation import build_system, multiply, standard_monomials
from .qminors import delta_d

# ---------------------------------------------------------------------------
# Hilbert series


def _series_mul(a: list[int], b: list[int], D: int) -> list[int]:
    out = [0] * (D + 1)
    for i, x in enumerate(a[: D + 1]):
        if x:
            for j, y in enumerate(b[: D + 1 - i]):
                out[i + j] += x * y
    return out


def invariant_dims(n: int, D: int) -> list[int]:
    """Coefficients of prod_{d=1..n} 1/(1 - t^d): partitions into parts <= n."""
    dims = [1] + [0] * D
    for part in range(1, n + 1):
        for k in range(part, D + 1):
            dims[k] += dims[k - part]
    return dims


@dataclass
class HilbertProfile:
    n: int
    dims_A: list[int]
    dims_I: list[int]
    dims_H: list[int]

    def convolution_holds(self) -> bool:
        D = len(self.dims_A) - 1
        return _series_mul(self.dims_H, self.dims_I, D) == self.dims_A


def hilbert_dims(n: int, max_degree: int) -> HilbertProfile:
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    D = max_degree
    N = n * n
    dims_A = [comb(d + N - 1, N - 1) for d in range(D + 1)]
    dims_I = invariant_dims(n, D)
    num = [1] + [0] * D
    for d in range(1, n + 1):
        factor = [0] * (D + 1)
        factor[0] = 1
        if d <= D:
            factor[d] = -1
        num = _series_mul(num, factor, D)
    dims_H = _series_mul(num, dims_A, D)
    return HilbertProfile(n, dims_A, dims_I, dims_H)


# ---------------------------------------------------------------------------
# candidate basis


def default_diag_bound(i: int) -> int:
    """Largest exponent allowed on x_ii: a_ii < i."""
    return i - 1


def candidate_basis(n: int, d: int, diag_bound: Callable[[int], int] = default_diag_bound) -> list[Word]:
    """Standard words of degree d with exponent of x_ii at most diag_bound(i)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    out = []
    diag = [(i - 1) * n + (i - 1) for i in range(1, n + 1)]
    bounds = [diag_bound(i) for i in range(1, n + 1)]
    for w in combinations_with_replacement(range(n * n), d):
        if all(w.count(g) <= b for g, b in zip(diag, bounds)):
            out.append(w)
    return out


def counting_identity(n: int, max_degree: int, diag_bound=default_diag_bound) -> list[bool]:
    """sum_e |B_e| * dims_I(d-e) == dims_A(d), per degree."""
    prof = hilbert_dims(n, max_degree)
    sizes = [len(candidate_basis(n, e, diag_bound)) for e in range(max_degree + 1)]
    return [
        sum(sizes[e] * prof.dims_I[d - e] for e in range(d + 1)) == prof.dims_A[d]
        for d in range(max_degree + 1)
    ]


# ---------------------------------------------------------------------------
# invariant monomials


def delta_exponents(n: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors (k_1..k_n) with sum_d d*k_d == degree, in lex order."""
    out = []

    def rec(d, remaining, acc):
        if d > n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        for k in range(remaining // d + 1):
            rec(d + 1, remaining - d * k, acc + [k])

    rec(1, degree, [])
    return sorted(out)


@lru_cache(maxsize=None)
def delta_monomial(n: int, exps: tuple[int, ...]) -> NCPolynomial:
    S = build_system(n, 1)
    if not any(exps):
        return NCPolynomial.one(n)
    # peel one factor off the first nonzero exponent
    k = next(i for i, e in enumerate(exps) if e)
    rest = list(exps)
    rest[k] -= 1
    return multiply(delta_d(n, k + 1), delta_monomial(n, tuple(rest)), S)


def word_weight(w: Word, n: int) -> tuple[int, ...]:
    """Row content minus column content."""
    v = [0] * n
    for g in w:
        i, j = divmod(g, n)
        v[i] += 1
        v[j] -= 1
    return tuple(v)


# ---------------------------------------------------------------------------
# certificate


@dataclass
class DegreeRecord:
    d: int
    dim_A: int
    candidate_count: int
    rank: int
    ranks: list[int] | None = None

    @property
    def passed(self) -> bool:
        return self.candidate_count == self.rank == self.dim_A

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "dim_A": self.dim_A,
            "candidate_count": self.candidate_count,
            "rank": self.rank,
            "pass": self.passed,
        }


@dataclass
class FreenessCertificate:
    n: int
    max_degree: int
    mode: str
    side: str = "left"
    degrees: list[DegreeRecord] = field(default_factory=list)
    sampled_points: list[Fraction] = field(default_factory=list)
    rank_stable: bool = True
    elapsed_ms: int | None = None

    @property
    def verdict(self) -> bool:
        return all(r.passed for r in self.degrees) and self.rank_stable

    def first_failure(self) -> int | None:
        return next((r.d for r in self.degrees if not r.passed), None)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "max_degree": self.max_degree,
            "mode": self.mode,
            "side": self.side,
            "degrees": [r.to_json() for r in self.degrees],
            "verdict": "pass" if self.verdict else "fail",
            "elapsed_ms": self.elapsed_ms,
        }
        if self.mode == "sampled":
            out["sampled_points"] = [str(p) for p in self.sampled_points]
            out["rank_stable"] = self.rank_stable
        return out


def sample_points(samples: int, seed: int) -> list[Fraction]:
    """Distinct rationals p/r with 2 <= p, r <= 97 and p != r (never roots of unity)."""
    rng = random.Random(seed)
    pts: list[Fraction] = []
    while len(pts) < samples:
        p, r = rng.randint(2, 97), rng.randint(2, 97)
        if p == r:
            continue
        x = Fraction(p, r)
        if x not in pts:
            pts.append(x)
    return pts


def degree_columns(n: int, d: int, side: str = "left", diag_bound=default_diag_bound):
    """Coefficient columns of all (Delta-monomial, candidate) products in degree d,
    grouped by weight block.  Returns {weight: [column dict]}.
    """
    S = build_system(n, 1)
    blocks: dict[tuple, list] = {}
    for e in range(d + 1):
        cands = candidate_basis(n, e, diag_bound)
        if not cands:
            continue
        exps = delta_exponents(n, d - e)
        for b in cands:
            bp = NCPolynomial.from_word(b, n)
            for ex in exps:
                m = delta_monomial(n, ex)
                prod = multiply(m, bp, S) if side == "left" else multiply(bp, m, S)
                blocks.setdefault(word_weight(b, n), []).append(prod.terms)
    return blocks


def certify_degree(n: int, d: int, mode: str = "exact", points=(), side="left",
                   diag_bound=default_diag_bound) -> DegreeRecord:
    dim_A = comb(d + n * n - 1, n * n - 1)
    blocks = degree_columns(n, d, side, diag_bound)
    count = sum(len(cols) for cols in blocks.values())
    row_order = {w: i for i, w in enumerate(standard_monomials(n, d))}
    if mode == "exact":
        rank = sum(rank_generic(cols, row_order) for cols in blocks.values())
        return DegreeRecord(d, dim_A, count, rank)
    ranks = [sum(rank_at(cols, q0, row_order) for cols in blocks.values()) for q0 in points]
    return DegreeRecord(d, dim_A, count, min(ranks), ranks)


def certify_freeness(
    n: int,
    max_degree: int,
    mode: str = "exact",
    samples: int = 3,
    seed: int = 0,
    side: str = "left",
    diag_bound=default_diag_bound,
    timing: bool = False,
    min_degree: int = 0,
    workers: int = 1,
) -> FreenessCertificate:
    """Check degree by degree that the candidate words form a free basis of A over I."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if mode not in ("exact", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "sampled" and samples < 1:
        raise ValueError("sampled mode needs at least one sample point")
    if side not in ("left", "right"):
        raise ValueError(f"unknown side {side!r}")
    t0 = time.perf_counter()
    points = sample_points(samples, seed) if mode == "sampled" else []
    cert = FreenessCertificate(n, max_degree, mode, side, sampled_points=points)
    degrees = list(range(min_degree, max_degree + 1))
    if workers > 1 and diag_bound is default_diag_bound:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(certify_degree, n, d, mode, points, side) for d in degrees]
            cert.degrees = [f.result() for f in futs]
    else:
        cert.degrees = [certify_degree(n, d, mode, points, side, diag_bound) for d in degrees]
    cert.rank_stable = all(r.ranks is None or len(set(r.ranks)) == 1 for r in cert.degrees)
    if timing:
        cert.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return cert


# ---------------------------------------------------------------------------
# invariant ring


@dataclass
class InvariantRingReport:
    n: int
    max_degree: int
    commute: bool
    independence: list[tuple[int, int, int]]  # (degree, count, rank)
    invariant: dict[int, bool]

    @property
    def ok(self) -> bool:
        return (
            self.commute
            and all(c == r for _, c, r in self.independence)
            and all(self.invariant.values())
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "commute": self.commute,
            "independence": [
                {"d": d, "count": c, "rank": r, "pass": c == r} for d, c, r in self.independence
            ],
            "invariant": {str(k): v for k, v in sorted(self.invariant.items())},
            "verdict": "pass" if self.ok else "fail",
        }


def invariant_ring_check(n: int, max_degree: int, check_invariance: bool = True) -> InvariantRingReport:
    S = build_system(n, 1)
    deltas = [delta_d(n, d) for d in range(1, n + 1)]
    commute = all(
        multiply(a, b, S) == multiply(b, a, S) for a, b in combinations(deltas, 2)
    )
    prof = hilbert_dims(n, max_degree)
    indep = []
    for d in range(1, max_degree + 1):
        cols = [delta_monomial(n, ex).terms for ex in delta_exponents(n, d)]
        if len(cols) != prof.dims_I[d]:
            indep.append((d, len(cols), -1))
            continue
        indep.append((d, len(cols), rank_generic(cols)))
    inv = {}
    if check_invariance:
        inv = {d: is_invariant(deltas[d - 1], "alpha") for d in range(1, n + 1)}
    return InvariantRingReport(n, max_degree, commute, indep, inv)


# ---------------------------------------------------------------------------
# q = 1


def at_q1(p: NCPolynomial) -> dict[Word, Fraction]:
    out = {}
    for w, c in p._t.items():
        v = c.evaluate(1)
        if v:
            out[w] = v
    return out


def evaluate_commutative(p: NCPolynomial, M) -> Fraction:
    """Value at q = 1 with x_ij := M[i][j] (commuting variables)."""
    n = p.n
    total = Fraction(0)
    for w, c in p._t.items():
        v = Fraction(c.evaluate(1))
        for g in w:
            i, j = divmod(g, n)
            v *= int(M[i][j])
        total += v
    return total


def principal_minor_sums(M) -> list[int]:
    """e_d(M) = sum of principal d x d minors, read off the characteristic polynomial."""
    coeffs = np.poly(np.asarray(M, dtype=float))
    return [int(round((-1) ** d * coeffs[d])) for d in range(1, len(coeffs))]


def random_polynomial(n: int, rng: random.Random, max_degree: int, max_terms: int = 3) -> NCPolynomial:
    """Random element of A in normal form with small integer Laurent coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        w = tuple(sorted(rng.randrange(n * n) for _ in range(d)))
        terms[w] = LaurentScalar({rng.randint(-2, 2): rng.choice([-3, -2, -1, 1, 2, 3])})
    return NCPolynomial(n, terms)


@dataclass
class ClassicalReport:
    n: int
    trials: int
    delta_mismatches: list[dict]
    commutativity_failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.delta_mismatches and not self.commutativity_failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "delta_mismatches": self.delta_mismatches,
            "commutativity_failures": self.commutativity_failures,
            "verdict": "pass" if self.ok else "fail",
        }


def classical_oracle_check(n: int, max_degree: int = 3, trials: int = 20, seed: int = 0,
                           commutativity_trials: int | None = None) -> ClassicalReport:
    """At q = 1: Delta_d is the d-th principal-minor sum and A is commutative."""
    rng = random.Random(seed)
    S = build_system(n, 1)
    deltas = [delta_d(n, d) for d in range(1, n + 1)]
    mism = []
    for _ in range(trials):
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        expect = principal_minor_sums(M)
        got = [int(evaluate_commutative(D, M)) for D in deltas]
        if got != expect:
            mism.append({"matrix": M, "expected": expect, "got": got})
    fails = []
    for _ in range(trials if commutativity_trials is None else commutativity_trials):
        a = random_polynomial(n, rng, max_degree)
        b = random_polynomial(n, rng, max_degree)
        if at_q1(multiply(a, b, S)) != at_q1(multiply(b, a, S)):
            fails.append(f"{format_expr(a)} | {format_expr(b)}")
    return ClassicalReport(n, trials, mism, fails)
