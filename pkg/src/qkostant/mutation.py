"""q-mutation systems S_1, ..., S_n presenting the quantum matrix algebra and its
successive associated graded algebras.

A system stores, for each pair of generators a < b, the relation

    x_b x_a = q_ab * x_a x_b + f_ab

so rewriting always moves the bigger letter to the right.  Normal forms are
linear combinations of standard (weakly increasing) words.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Mapping

from .coeff import ONE, Q, QINV, LaurentScalar
from .freealg import GenIndex, NCPolynomial, Word, format_expr, format_word, gen, is_standard, rc

CURLY_COEFF = QINV - Q  # (q^-1 - q)


class PairClass(enum.Enum):
    SAME_ROW = "same_row"
    SAME_COL = "same_col"
    ANTIDIAGONAL = "antidiagonal"
    DIAGONAL_CURLY = "diagonal_curly"


def classify_pair(a, b, n: int | None = None) -> PairClass:
    """Relation type of generators ``a < b``.

    ``a`` and ``b`` are ``GenIndex`` objects, (i, j) tuples (with ``n``), or
    flat indices (with ``n``).
    """
    (i, j), (k, l) = _as_rc(a, n), _as_rc(b, n)
    if (i, j) >= (k, l):
        raise ValueError(f"classify_pair needs a < b, got ({i},{j}) and ({k},{l})")
    if i == k:
        return PairClass.SAME_ROW
    if j == l:
        return PairClass.SAME_COL
    if j > l:
        return PairClass.ANTIDIAGONAL
    return PairClass.DIAGONAL_CURLY


def _as_rc(a, n):
    if isinstance(a, GenIndex):
        return a.row, a.col
    if isinstance(a, tuple):
        return a
    if n is None:
        raise ValueError("flat indices need n")
    return rc(a, n)


def stage_weight(n: int, t: int, idx: int) -> int:
    """w_t at a flat index: 1 if |i-j| < n-t else 0.  t = 0 gives the all-ones weighting."""
    i, j = rc(idx, n)
    return 1 if abs(i - j) < n - t else 0


@dataclass(frozen=True, eq=False)
class MutationSystem:
    """Relation tables of one presented algebra A(S).

    ``q_table`` and ``f_table`` are keyed by flat pairs (a, b) with a < b;
    missing f entries are zero.  Equality compares the tables only.
    """

    n: int
    q_table: Mapping[tuple[int, int], LaurentScalar]
    f_table: Mapping[tuple[int, int], NCPolynomial]
    t: int | None = None
    label: str = ""
    _insert_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _nf_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def weighting(self):
        """The weighting w_t attached to a tower stage (None for ad hoc systems)."""
        from .filtration import weighting_wt

        return None if self.t is None else weighting_wt(self.n, self.t)

    def q_of(self, a: int, b: int) -> LaurentScalar:
        return self.q_table[(a, b)]

    def f_of(self, a: int, b: int) -> NCPolynomial:
        f = self.f_table.get((a, b))
        return f if f is not None else NCPolynomial.zero(self.n)

    def nonzero_f(self) -> dict[tuple[int, int], NCPolynomial]:
        return {k: v for k, v in self.f_table.items() if v}

    def __eq__(self, other):
        if not isinstance(other, MutationSystem):
            return NotImplemented
        return (
            self.n == other.n
            and dict(self.q_table) == dict(other.q_table)
            and self.nonzero_f() == other.nonzero_f()
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.q_table.items()), frozenset(self.nonzero_f().items())))

    def with_tables(self, q_table=None, f_table=None, label="") -> "MutationSystem":
        return MutationSystem(
            self.n,
            dict(self.q_table if q_table is None else q_table),
            dict(self.f_table if f_table is None else f_table),
            t=None,
            label=label,
        )

    def table_lines(self) -> list[str]:
        """One line per generator pair: ``x_b*x_a = q_ab*x_a*x_b + f_ab``."""
        lines = []
        n = self.n
        for (a, b) in sorted(self.q_table):
            lhs = format_word((b, a), n)
            rhs = NCPolynomial(n, {(a, b): self.q_table[(a, b)]}) + self.f_of(a, b)
            lines.append(f"{lhs} = {format_expr(rhs)}")
        return lines


@lru_cache(maxsize=None)
def build_system(n: int, t: int = 1) -> MutationSystem:
    """The system S_t for O(M_q(n)); S_1 presents the quantum matrices themselves."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= t <= n:
        raise ValueError(f"stage t={t} out of range 1..{n}")
    q_table = {}
    f_table = {}
    N = n * n
    for a in range(N):
        for b in range(a + 1, N):
            kind = classify_pair(a, b, n)
            if kind in (PairClass.SAME_ROW, PairClass.SAME_COL):
                q_table[(a, b)] = QINV
                continue
            q_table[(a, b)] = ONE
            if kind is PairClass.DIAGONAL_CURLY:
                (i, j), (k, l) = rc(a, n), rc(b, n)
                il, kj = gen(i, l, n), gen(k, j, n)
                if stage_weight(n, t - 1, il) and stage_weight(n, t - 1, kj):
                    f_table[(a, b)] = NCPolynomial(n, {(il, kj): CURLY_COEFF})
    return MutationSystem(n, q_table, f_table, t=t, label=f"S_{t}")


# ---------------------------------------------------------------------------
# elementary mutations and literal rewriting


def descent_positions(w: Word) -> list[int]:
    """1-based positions r with w[r] < w[r-1]."""
    return [r + 1 for r in range(1, len(w)) if w[r] < w[r - 1]]


def elementary_mutation(w: Word, r: int, S: MutationSystem) -> NCPolynomial:
    """Mutate ``w`` at 1-based position ``r`` (letters r-1 and r swap)."""
    w = tuple(w)
    if not (2 <= r <= len(w)) or not w[r - 1] < w[r - 2]:
        raise ValueError(f"position {r} is not a descent of {format_word(w, S.n)}")
    a, b = w[r - 1], w[r - 2]
    head, tail = w[: r - 2], w[r:]
    out = {head + (a, b) + tail: S.q_of(a, b)}
    for fw, fc in S.f_of(a, b)._t.items():
        key = head + fw + tail
        out[key] = out[key] + fc if key in out else fc
    return NCPolynomial(S.n, out)


STRATEGIES = ("leftmost", "random", "memo")


def normalize(
    p: NCPolynomial,
    S: MutationSystem,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
    max_steps: int | None = None,
) -> NCPolynomial:
    """Rewrite ``p`` into a combination of standard words.

    ``leftmost`` mutates the leftmost descent of the lex-greatest nonstandard
    word; ``random`` picks a nonstandard word and descent with ``rng``;
    ``memo`` uses the cached insertion engine (rightmost descents), which is
    what ``multiply`` runs on.
    """
    if p.n != S.n:
        raise ValueError("polynomial and system have different n")
    if strategy == "memo":
        return _nf_poly(p, S)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    terms = dict(p._t)
    bad = {w for w in terms if not is_standard(w)}
    steps = 0
    while bad:
        if strategy == "leftmost":
            w = max(bad)
            r = descent_positions(w)[0]
        else:
            w = rng.choice(sorted(bad))
            r = rng.choice(descent_positions(w))
        c = terms.pop(w)
        bad.discard(w)
        for v, cv in elementary_mutation(w, r, S)._t.items():
            s = terms[v] + c * cv if v in terms else c * cv
            if s:
                terms[v] = s
                if not is_standard(v):
                    bad.add(v)
            else:
                terms.pop(v, None)
                bad.discard(v)
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise RuntimeError(f"normalization did not finish within {max_steps} mutations")
    return NCPolynomial._raw(S.n, terms)


# ---------------------------------------------------------------------------
# memoized insertion engine


def _acc(out: dict, w: Word, c: LaurentScalar):
    s = out[w] + c if w in out else c
    if s:
        out[w] = s
    else:
        out.pop(w, None)


def _insert(u: Word, g: int, S: MutationSystem) -> dict[Word, LaurentScalar]:
    """Normal form of (standard word u) * x_g."""
    if not u or u[-1] <= g:
        return {u + (g,): ONE}
    key = (u, g)
    cache = S._insert_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    last = u[-1]
    head = u[:-1]
    out: dict[Word, LaurentScalar] = {}
    qc = S.q_of(g, last)
    for v, c in _insert(head, g, S).items():
        qcc = qc * c
        for v2, c2 in _insert(v, last, S).items():
            _acc(out, v2, qcc * c2)
    f = S.f_table.get((g, last))
    if f is not None:
        for fw, fc in f._t.items():
            for v, c in _mul_std_word(head, fw, S).items():
                _acc(out, v, fc * c)
    cache[key] = out
    return out


def _mul_std_word(u: Word, w: Word, S: MutationSystem) -> dict[Word, LaurentScalar]:
    """Normal form of (standard word u) * (arbitrary word w)."""
    cur = {u: ONE}
    for g in w:
        nxt: dict[Word, LaurentScalar] = {}
        for v, c in cur.items():
            for v2, c2 in _insert(v, g, S).items():
                _acc(nxt, v2, c * c2)
        cur = nxt
    return cur


def word_normal_form(w: Word, S: MutationSystem) -> dict[Word, LaurentScalar]:
    w = tuple(w)
    cache = S._nf_cache
    hit = cache.get(w)
    if hit is None:
        if is_standard(w):
            hit = {w: ONE}
        else:
            hit = _mul_std_word((), w, S)
        cache[w] = hit
    return hit


def _nf_poly(p: NCPolynomial, S: MutationSystem) -> NCPolynomial:
    out: dict[Word, LaurentScalar] = {}
    for w, c in p._t.items():
        for v, cv in word_normal_form(w, S).items():
            _acc(out, v, c * cv)
    return NCPolynomial._raw(S.n, out)


def multiply(p: NCPolynomial, r: NCPolynomial, S: MutationSystem) -> NCPolynomial:
    """Product in A(S) of two polynomials in normal form."""
    if p.n != S.n or r.n != S.n:
        raise ValueError("polynomials and system have different n")
    out: dict[Word, LaurentScalar] = {}
    for u, cu in p._t.items():
        if not is_standard(u):
            raise ValueError(f"left factor not in normal form: {format_word(u, S.n)}")
        for v, cv in r._t.items():
            c = cu * cv
            for w, cw in _mul_std_word(u, v, S).items():
                _acc(out, w, c * cw)
    return NCPolynomial._raw(S.n, out)


def product(factors, S: MutationSystem) -> NCPolynomial:
    out = NCPolynomial.one(S.n)
    for f in factors:
        out = multiply(out, f, S)
    return out


def power(p: NCPolynomial, k: int, S: MutationSystem) -> NCPolynomial:
    return product([p] * k, S)


# ---------------------------------------------------------------------------
# standard monomials and confluence


def standard_monomials(n: int, d: int) -> list[Word]:
    """All weakly increasing words of length d, in lex order."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return list(combinations_with_replacement(range(n * n), d))


@dataclass
class ConfluenceFailure:
    word: Word
    first: NCPolynomial
    second: NCPolynomial

    def describe(self, n: int) -> str:
        return (
            f"{format_word(self.word, n)}: {format_expr(self.first)} != {format_expr(self.second)}"
        )


@dataclass
class ConfluenceReport:
    n: int
    label: str
    checked: int = 0
    failures: list[ConfluenceFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def pbw_confluence_check(S: MutationSystem, max_overlap_degree: int = 3) -> ConfluenceReport:
    """Resolve every overlap x_c x_b x_a (a < b < c) in both orders.

    For degrees above 3, strictly decreasing words of that length are also
    normalized by the leftmost and memo strategies and compared.
    """
    if max_overlap_degree < 3:
        raise ValueError("max_overlap_degree must be at least 3")
    n = S.n
    report = ConfluenceReport(n, S.label)
    N = n * n
    for a, b, c in combinations(range(N), 3):
        w = (c, b, a)
        left = normalize(elementary_mutation(w, 2, S), S)
        right = normalize(elementary_mutation(w, 3, S), S)
        report.checked += 1
        if left != right:
            report.failures.append(ConfluenceFailure(w, left, right))
    for deg in range(4, max_overlap_degree + 1):
        for letters in combinations(range(N), deg):
            w = tuple(reversed(letters))
            p = NCPolynomial.from_word(w, n)
            first = normalize(p, S, "leftmost")
            second = normalize(p, S, "memo")
            report.checked += 1
            if first != second:
                report.failures.append(ConfluenceFailure(w, first, second))
    return report


def corrupted_system(n: int, t: int = 1) -> MutationSystem:
    """S_t with the (q^-1 - q) factor dropped from every curly relation."""
    S = build_system(n, t)
    f_table = {k: NCPolynomial(n, {w: ONE for w in v._t}) for k, v in S.f_table.items()}
    return S.with_tables(f_table=f_table, label=f"corrupted S_{t}")
