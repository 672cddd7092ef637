"""O(GL_q(n)) = A[det_q^-1]: localized elements, coproduct, antipode and the
adjoint coactions alpha and beta of H on A.

Everything here lives over the stage-1 system, i.e. in the quantum matrix
algebra itself.  Elements of H are pairs (numerator, k) meaning
numerator * det_q^-k; since det_q is central the side on which the inverse
power sits does not matter.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct

from .coeff import ONE, ZERO, LaurentScalar
from .freealg import NCPolynomial, Word, format_expr, gen, is_standard, rc
from .mutation import MutationSystem, build_system, multiply, normalize, word_normal_form, _mul_std_word
from .qminors import qdet, quantum_minor


def _S(n: int) -> MutationSystem:
    return build_system(n, 1)


def _acc(out: dict, key, c: LaurentScalar):
    s = out[key] + c if key in out else c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


@lru_cache(maxsize=None)
def det_power(n: int, k: int) -> NCPolynomial:
    if k == 0:
        return NCPolynomial.one(n)
    return multiply(det_power(n, k - 1), qdet(n), _S(n))


def _counts(w: Word, N: int) -> tuple[int, ...]:
    c = [0] * N
    for g in w:
        c[g] += 1
    return tuple(c)


def _order_key(w: Word, n: int):
    # sum of i*j strictly drops along every curly rewrite, so this key makes
    # normal forms of products triangular: lead(u*v) = sorted(u+v)
    phi = 0
    for g in w:
        i, j = divmod(g, n)
        phi += (i + 1) * (j + 1)
    return phi, _counts(w, n * n)


def divide_by_det(p: NCPolynomial) -> NCPolynomial | None:
    """Return c with c * det_q = p in A, or None when det_q does not divide p."""
    n = p.n
    S = _S(n)
    det = qdet(n)
    diag = _counts(tuple(gen(i, i, n) for i in range(1, n + 1)), n * n)
    rem = dict(p._t)
    quot: dict[Word, LaurentScalar] = {}
    while rem:
        lead = max(rem, key=lambda w: _order_key(w, n))
        cnt = _counts(lead, n * n)
        if any(a < b for a, b in zip(cnt, diag)):
            return None
        m = tuple(g for g in range(n * n) for _ in range(cnt[g] - diag[g]))
        prod = multiply(NCPolynomial.from_word(m, n), det, S)
        lc = prod.coefficient(lead)
        if not lc.is_monomial():
            raise ArithmeticError("unexpected leading coefficient in det_q division")
        c = rem[lead] * lc.inverse()
        _acc(quot, m, c)
        for w, cw in prod._t.items():
            _acc(rem, w, -(c * cw))
        if lead in rem:
            raise ArithmeticError("leading term did not cancel in det_q division")
    return NCPolynomial._raw(n, quot)


class LocalizedElement:
    """numerator * det_q^(-det_power) with the numerator in normal form."""

    __slots__ = ("numerator", "det_power")

    def __init__(self, numerator: NCPolynomial, det_power: int = 0, *, reduce: bool = True):
        if det_power < 0:
            raise ValueError("det_power must be non-negative")
        num = numerator if numerator.is_standard() else normalize(numerator, _S(numerator.n), "memo")
        k = det_power
        if reduce:
            if num.is_zero():
                k = 0
            while k > 0:
                c = divide_by_det(num)
                if c is None:
                    break
                num, k = c, k - 1
        self.numerator = num
        self.det_power = k

    @property
    def n(self) -> int:
        return self.numerator.n

    def lift(self, k: int) -> NCPolynomial:
        """Numerator over det_q^k (k >= det_power)."""
        if k < self.det_power:
            raise ValueError("cannot lift to a smaller det power")
        return multiply(self.numerator, det_power(self.n, k - self.det_power), _S(self.n))

    def __add__(self, other: "LocalizedElement") -> "LocalizedElement":
        k = max(self.det_power, other.det_power)
        return LocalizedElement(self.lift(k) + other.lift(k), k)

    def __neg__(self):
        return LocalizedElement(-self.numerator, self.det_power, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LocalizedElement):
            return LocalizedElement(
                multiply(self.numerator, other.numerator, _S(self.n)),
                self.det_power + other.det_power,
            )
        return LocalizedElement(self.numerator.scale(other), self.det_power, reduce=False)

    def __eq__(self, other):
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        k = max(self.det_power, other.det_power)
        return self.lift(k) == other.lift(k)

    def __hash__(self):
        return hash((self.numerator, self.det_power))

    def __repr__(self):
        return f"LocalizedElement({format_expr(self.numerator)!r}, det_power={self.det_power})"


def localized_arith(a: LocalizedElement, b: LocalizedElement, op: str) -> LocalizedElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# coproduct and counit on A


def _expand_coproduct(w: Word, n: int, legs: int):
    """Raw iterated coproduct of a word: yields (tuple of leg words, 1)."""
    m = len(w)
    rcs = [divmod(g, n) for g in w]
    for mids in iproduct(range(n), repeat=m * (legs - 1)):
        out = []
        for leg in range(legs):
            letters = []
            for r, (i, j) in enumerate(rcs):
                left = i if leg == 0 else mids[r * (legs - 1) + leg - 1]
                right = j if leg == legs - 1 else mids[r * (legs - 1) + leg]
                letters.append(left * n + right)
            out.append(tuple(letters))
        yield tuple(out)


def comultiply(p: NCPolynomial, legs: int = 2) -> dict[tuple[Word, ...], LaurentScalar]:
    """Delta(x_ij) = sum_k x_ik (x) x_kj, extended multiplicatively.

    ``legs=3`` gives the iterated coproduct.  Each leg is normalized in A.
    """
    n = p.n
    S = _S(n)
    out: dict = {}
    for w, c in p._t.items():
        for raw in _expand_coproduct(w, n, legs):
            parts = [word_normal_form(leg, S) for leg in raw]
            for combo in iproduct(*(pt.items() for pt in parts)):
                coeff = c
                for _, cc in combo:
                    coeff = coeff * cc
                _acc(out, tuple(v for v, _ in combo), coeff)
    return out


def counit(p: NCPolynomial) -> LaurentScalar:
    n = p.n
    total = ZERO
    for w, c in p._t.items():
        if all(g // n == g % n for g in w):
            total = total + c
    return total


def tensor_from(p: NCPolynomial, q: NCPolynomial) -> dict:
    out: dict = {}
    for w1, c1 in p._t.items():
        for w2, c2 in q._t.items():
            _acc(out, (w1, w2), c1 * c2)
    return out


def apply_on_leg(t: dict, leg: int, fn) -> dict:
    """Apply a linear map word -> dict(tuple-of-words -> coeff) to one tensor leg."""
    out: dict = {}
    for key, c in t.items():
        for sub, cs in fn(key[leg]).items():
            _acc(out, key[:leg] + sub + key[leg + 1:], c * cs)
    return out


# ---------------------------------------------------------------------------
# antipode


def antipode_generator(i: int, j: int, n: int) -> LocalizedElement:
    """S(u_ij) = (-q)^(i-j) * (quantum minor on rows != j, cols != i) * det_q^-1."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"index ({i},{j}) out of range for n={n}")
    return LocalizedElement(_cofactor(i, j, n), 1, reduce=False)


@lru_cache(maxsize=None)
def _cofactor(i: int, j: int, n: int) -> NCPolynomial:
    rows = [r for r in range(1, n + 1) if r != j]
    cols = [c for c in range(1, n + 1) if c != i]
    return quantum_minor(n, rows, cols).scale(LaurentScalar.q(i - j, (-1) ** ((i - j) % 2)))


def antipode_numerator(w: Word, n: int) -> NCPolynomial:
    """Numerator of S(x_w) over det_q^len(w); S is an anti-homomorphism."""
    return _antipode_numerator(tuple(w), n)


@lru_cache(maxsize=None)
def _antipode_numerator(w: Word, n: int) -> NCPolynomial:
    if not w:
        return NCPolynomial.one(n)
    i, j = rc(w[0], n)
    # S(x_w0 * rest) = S(rest) * S(x_w0)
    return multiply(_antipode_numerator(w[1:], n), _cofactor(i, j, n), _S(n))


def antipode(p: NCPolynomial) -> LocalizedElement:
    n = p.n
    if not p.is_homogeneous():
        total = None
        for d in sorted(p.degrees()):
            part = NCPolynomial._raw(n, {w: c for w, c in p._t.items() if len(w) == d})
            total = antipode(part) if total is None else total + antipode(part)
        return total
    if p.is_zero():
        return LocalizedElement(p, 0)
    m = next(iter(p.degrees()))
    num = NCPolynomial.zero(n)
    for w, c in p._t.items():
        num = num + antipode_numerator(w, n).scale(c)
    return LocalizedElement(num, m, reduce=False)


def antipode_axiom_residuals(n: int) -> list[tuple[int, int, str, NCPolynomial]]:
    """Entries where sum_k u_ik S(u_kj) or sum_k S(u_ik) u_kj differs from delta_ij.

    Each residual is the numerator difference over det_q^1; empty means pass.
    """
    S = _S(n)
    det = qdet(n)
    bad = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            target = det if i == j else NCPolynomial.zero(n)
            right = NCPolynomial.zero(n)
            left = NCPolynomial.zero(n)
            for k in range(1, n + 1):
                right = right + multiply(NCPolynomial.x(i, k, n), _cofactor(k, j, n), S)
                left = left + multiply(_cofactor(i, k, n), NCPolynomial.x(k, j, n), S)
            if right != target:
                bad.append((i, j, "u*S(u)", right - target))
            if left != target:
                bad.append((i, j, "S(u)*u", left - target))
    return bad


# ---------------------------------------------------------------------------
# A (x) H


class TensorElement:
    """Element of A (x) H, stored as {(word_A, word_H, k): coeff} meaning
    word_A (x) word_H * det_q^-k.  Both legs are standard words.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def simple(cls, a: NCPolynomial, h: LocalizedElement) -> "TensorElement":
        out: dict = {}
        for wa, ca in a._t.items():
            for wh, ch in h.numerator._t.items():
                _acc(out, (wa, wh, h.det_power), ca * ch)
        return cls(a.n, out)

    def max_power(self) -> int:
        return max((k for _, _, k in self.terms), default=0)

    def lifted(self, K: int) -> dict[tuple[Word, Word], LaurentScalar]:
        """All terms rewritten over det_q^K."""
        out: dict = {}
        for (wa, wh, k), c in self.terms.items():
            if k == K:
                _acc(out, (wa, wh), c)
                continue
            for v, cv in _lift_leg(wh, k, K, self.n).items():
                _acc(out, (wa, v), c * cv)
        return out

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, c)
        return TensorElement(self.n, out)

    def __neg__(self):
        return TensorElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        S = _S(self.n)
        out: dict = {}
        for (a1, h1, k1), c1 in self.terms.items():
            for (a2, h2, k2), c2 in other.terms.items():
                c = c1 * c2
                pa = _mul_std_word(a1, a2, S)
                ph = _mul_std_word(h1, h2, S)
                for wa, ca in pa.items():
                    cc = c * ca
                    for wh, ch in ph.items():
                        _acc(out, (wa, wh, k1 + k2), cc * ch)
        return TensorElement(self.n, out)

    def is_zero(self) -> bool:
        K = self.max_power()
        return not self.lifted(K)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        K = max(self.max_power(), other.max_power())
        return self.lifted(K) == other.lifted(K)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"TensorElement(n={self.n}, {len(self.terms)} terms)"


VARIANTS = ("alpha", "beta", "beta_literal")


def coaction(p: NCPolynomial, variant: str = "alpha") -> TensorElement:
    """Adjoint coaction A -> A (x) H.

    On a word a, in Sweedler notation for the iterated coproduct:

        alpha(a)        = sum a(2) (x) a(3) S(a(1))
        beta(a)         = sum a(2) (x) S(a(1)) a(3)
        beta_literal(a) = sum a(2) (x) S(a(3)) a(1)

    so on generators alpha(x_ij) = sum_{m,s} x_ms (x) u_sj S(u_im) and
    beta(x_ij) = sum_{m,s} x_ms (x) S(u_im) u_sj.  ``beta_literal`` is the
    ordering S(u_sj) u_im; it is not a right coaction and its invariants are
    the unweighted Delta_d, so it is kept only for comparison.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown coaction variant {variant!r}")
    n = p.n
    S = _S(n)
    out: dict = {}
    for w, c in p._t.items():
        if not is_standard(w):
            raise ValueError("coaction expects a polynomial in normal form")
        m = len(w)
        rcs = [divmod(g, n) for g in w]
        for ms in iproduct(range(n), repeat=m):
            a1 = tuple(i * n + mm for (i, _), mm in zip(rcs, ms))
            if variant == "beta_literal":
                a1_poly = NCPolynomial._raw(n, dict(word_normal_form(a1, S)))
            else:
                sa1 = antipode_numerator(a1, n)
            for ss in iproduct(range(n), repeat=m):
                a2 = tuple(mm * n + s for mm, s in zip(ms, ss))
                a3 = tuple(s * n + j for s, (_, j) in zip(ss, rcs))
                if variant == "alpha":
                    leg = multiply(NCPolynomial._raw(n, dict(word_normal_form(a3, S))), sa1, S)
                elif variant == "beta":
                    leg = multiply(sa1, NCPolynomial._raw(n, dict(word_normal_form(a3, S))), S)
                else:
                    leg = multiply(antipode_numerator(a3, n), a1_poly, S)
                if leg.is_zero():
                    continue
                for wa, ca in word_normal_form(a2, S).items():
                    cc = c * ca
                    for wh, ch in leg._t.items():
                        _acc(out, (wa, wh, m), cc * ch)
    return TensorElement(n, out)


def trivial_tensor(p: NCPolynomial) -> TensorElement:
    """p (x) 1."""
    return TensorElement(p.n, {(w, (), 0): c for w, c in p._t.items()})


def is_invariant(p: NCPolynomial, variant: str = "alpha") -> bool:
    if not p.is_standard():
        raise ValueError("is_invariant expects a polynomial in normal form")
    return coaction(p, variant) == trivial_tensor(p)


def multiplicativity_on_invariants_check(x: NCPolynomial, y: NCPolynomial) -> bool:
    """alpha(x*y) == alpha(x) * alpha(y) for invariant y."""
    if not is_invariant(y, "alpha"):
        raise ValueError("second factor is not alpha-invariant")
    S = _S(x.n)
    return coaction(multiply(x, y, S), "alpha") == coaction(x, "alpha") * coaction(y, "alpha")


# ---------------------------------------------------------------------------
# Hopf and comodule axioms


def _delta_A(w: Word, n: int) -> dict:
    return comultiply(NCPolynomial.from_word(w, n))


def coassociativity_holds(p: NCPolynomial) -> bool:
    n = p.n
    d = comultiply(p)
    left = apply_on_leg(d, 0, lambda w: _delta_A(w, n))
    right = apply_on_leg(d, 1, lambda w: _delta_A(w, n))
    return left == right


def counit_holds(p: NCPolynomial) -> bool:
    n = p.n
    d = comultiply(p)
    left: dict = {}
    right: dict = {}
    for (w1, w2), c in d.items():
        e1 = counit(NCPolynomial.from_word(w1, n))
        e2 = counit(NCPolynomial.from_word(w2, n))
        if e1:
            _acc(left, w2, c * e1)
        if e2:
            _acc(right, w1, c * e2)
    return left == p._t and right == p._t


def is_grouplike(p: NCPolynomial) -> bool:
    return comultiply(p) == tensor_from(p, p)


def _lift_leg(poly_word: Word, k: int, K: int, n: int) -> dict:
    if k == K:
        return {poly_word: ONE}
    return multiply(NCPolynomial.from_word(poly_word, n), det_power(n, K - k), _S(n))._t


def comodule_axiom_holds(p: NCPolynomial, variant: str = "alpha") -> bool:
    """(coaction (x) id) o coaction == (id (x) Delta_H) o coaction."""
    n = p.n
    first = coaction(p, variant)
    left: dict = {}
    for (wa, wh, k), c in first.terms.items():
        inner = coaction(NCPolynomial.from_word(wa, n), variant)
        for (wa2, wh2, k2), c2 in inner.terms.items():
            _acc(left, (wa2, wh2, k2, wh, k), c * c2)
    right: dict = {}
    for (wa, wh, k), c in first.terms.items():
        for (h1, h2), cd in _delta_A(wh, n).items():
            _acc(right, (wa, h1, k, h2, k), c * cd)
    K1 = max(max((key[2] for key in left), default=0), max((key[2] for key in right), default=0))
    K2 = max(max((key[4] for key in left), default=0), max((key[4] for key in right), default=0))

    def canon(t):
        out: dict = {}
        for (wa, h1, k1, h2, k2), c in t.items():
            for v1, c1 in _lift_leg(h1, k1, K1, n).items():
                for v2, c2 in _lift_leg(h2, k2, K2, n).items():
                    _acc(out, (wa, v1, v2), c * c1 * c2)
        return out

    return canon(left) == canon(right)
