"""Weightings with their filtrations and symbols; the tower S_t -> S_{t+1}."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .freealg import NCPolynomial, Word, gen, rc
from .mutation import MutationSystem, build_system, normalize, pbw_confluence_check, standard_monomials


@dataclass(frozen=True)
class Weighting:
    n: int
    weights: tuple[int, ...]  # indexed by flat generator index

    def __post_init__(self):
        if len(self.weights) != self.n * self.n:
            raise ValueError("a weighting needs one weight per generator")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")

    def __call__(self, i: int, j: int) -> int:
        return self.weights[gen(i, j, self.n)]

    def word_degree(self, w: Word) -> int:
        ws = self.weights
        return sum(ws[g] for g in w)

    def support(self) -> list[tuple[int, int]]:
        return [rc(g, self.n) for g, v in enumerate(self.weights) if v]


def weighting_wt(n: int, t: int) -> Weighting:
    """w_t(i,j) = 1 if |i-j| < n-t else 0; t = 0 is the all-ones weighting."""
    if not 0 <= t <= n:
        raise ValueError(f"stage t={t} out of range 0..{n}")
    return Weighting(n, tuple(1 if abs(i - j) < n - t else 0 for i in range(n) for j in range(n)))


def trace_weighting(n: int) -> Weighting:
    """Weight 1 on the diagonal only (the filtration by trace of the exponent matrix)."""
    return Weighting(n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def filtration_degree(p: NCPolynomial, w: Weighting, S: MutationSystem | None = None) -> int:
    """Largest weight of a word of ``p``; non-standard input is first normalized in ``S``."""
    if p.is_zero():
        raise ValueError("filtration degree of zero is undefined")
    if not p.is_standard():
        if S is None:
            raise ValueError("polynomial is not in normal form and no system was given")
        p = normalize(p, S, "memo")
        if p.is_zero():
            raise ValueError("filtration degree of zero is undefined")
    return max(w.word_degree(v) for v in p._t)


def symbol(p: NCPolynomial, w: Weighting, S: MutationSystem | None = None) -> NCPolynomial:
    """Top-weight part of ``p`` (its image in the associated graded)."""
    if not p.is_standard():
        if S is None:
            raise ValueError("polynomial is not in normal form and no system was given")
        p = normalize(p, S, "memo")
    d = filtration_degree(p, w)
    return NCPolynomial._raw(p.n, {v: c for v, c in p._t.items() if w.word_degree(v) == d})


def homogeneous_part(p: NCPolynomial, w: Weighting, d: int) -> NCPolynomial:
    return NCPolynomial._raw(p.n, {v: c for v, c in p._t.items() if w.word_degree(v) == d})


@dataclass
class CompatibilityResult:
    ok: bool
    witnesses: list[tuple[tuple[int, int], tuple[int, int], int, int]] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def describe(self, n: int) -> list[str]:
        return [
            f"({a[0]},{a[1]}),({b[0]},{b[1]}): deg f = {df} > {bound}"
            for a, b, df, bound in self.witnesses
        ]


def compatibility_check(S: MutationSystem, w: Weighting) -> CompatibilityResult:
    """Check deg_w f_ab <= w(a) + w(b) for every pair.

    Witnesses are (a, b, deg f, bound) in lex order of the pair, with a and b
    as (row, col) tuples.
    """
    if w.n != S.n:
        raise ValueError("weighting and system have different n")
    ws = w.weights
    bad = []
    for (a, b), f in sorted(S.f_table.items()):
        if not f:
            continue
        df = max(w.word_degree(v) for v in f._t)
        bound = ws[a] + ws[b]
        if df > bound:
            bad.append((rc(a, S.n), rc(b, S.n), df, bound))
    return CompatibilityResult(not bad, bad)


def symbol_system(S: MutationSystem, w: Weighting) -> MutationSystem:
    """sigma_w(S): same q-table, each f replaced by its part of weight w(a)+w(b)."""
    res = compatibility_check(S, w)
    if not res:
        raise ValueError(f"weighting is not compatible with {S.label or 'system'}: {res.describe(S.n)[0]}")
    ws = w.weights
    f_table = {}
    for (a, b), f in S.f_table.items():
        top = homogeneous_part(f, w, ws[a] + ws[b])
        if top:
            f_table[(a, b)] = top
    t = None if S.t is None else S.t + 1
    label = f"sigma({S.label})" if S.label else "sigma(S)"
    return MutationSystem(S.n, dict(S.q_table), f_table, t=t, label=label)


def bidegree_counts(n: int, degree: int, w: Weighting) -> Counter:
    """Number of standard monomials of each weight in a fixed total degree."""
    return Counter(w.word_degree(v) for v in standard_monomials(n, degree))


@dataclass
class TowerRow:
    n: int
    t: int
    compatible: bool
    symbol_matches_next: bool | None
    graded_dims_match: bool | None
    next_pbw: bool | None

    @property
    def ok(self) -> bool:
        return all(v is not False for v in (self.compatible, self.symbol_matches_next,
                                             self.graded_dims_match, self.next_pbw))


def tower_check(n: int, max_degree: int = 3) -> list[TowerRow]:
    """Run compatibility, sigma_{w_t}(S_t) == S_{t+1} and graded-dimension checks for every t."""
    rows = []
    for t in range(1, n + 1):
        S = build_system(n, t)
        w = weighting_wt(n, t)
        comp = bool(compatibility_check(S, w))
        if t == n:
            rows.append(TowerRow(n, t, comp, None, None, None))
            continue
        nxt = build_system(n, t + 1)
        sym = symbol_system(S, w) if comp else None
        matches = sym == nxt if sym is not None else False
        # gr^d A_t in total degree m has the weight-d standard monomials as a basis;
        # A_{t+1} has the same count in bidegree (m, d) once its normal forms are
        # w_t-homogeneous and S_{t+1} is PBW.
        dims_ok = graded_homogeneity_check(nxt, w, max_degree)
        pbw = pbw_confluence_check(nxt).ok
        rows.append(TowerRow(n, t, comp, matches, dims_ok and pbw, pbw))
    return rows


def weight_bounded_normalization_check(S: MutationSystem, w: Weighting, length: int) -> list[Word]:
    """Words of the given length whose normal form has a word heavier than the original.

    Empty result means p(F_w^d F) lies in F_{w,S}^d for all words of that length.
    """
    from itertools import product as iproduct

    bad = []
    N = S.n * S.n
    for letters in iproduct(range(N), repeat=length):
        d = w.word_degree(letters)
        nf = normalize(NCPolynomial.from_word(letters, S.n), S, "memo")
        if any(w.word_degree(v) > d for v in nf._t):
            bad.append(letters)
    return bad


def graded_homogeneity_check(S: MutationSystem, w: Weighting, max_degree: int) -> bool:
    """Every word of length <= max_degree normalizes to standard words of its own weight."""
    from itertools import product as iproduct

    N = S.n * S.n
    for m in range(2, max_degree + 1):
        for letters in iproduct(range(N), repeat=m):
            d = w.word_degree(letters)
            nf = normalize(NCPolynomial.from_word(letters, S.n), S, "memo")
            if any(w.word_degree(v) != d for v in nf._t):
                return False
    return True
