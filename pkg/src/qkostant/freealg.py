"""Words and noncommutative polynomials in the generators x[i,j] of an n x n grid.

Generators are stored as flat integers ``(i-1)*n + (j-1)``, which makes the
lexicographic generator order (i,j) <= (k,l) iff n*i+j <= n*k+l plain integer
comparison.  A word is a tuple of flat indices; the empty tuple is the unit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .coeff import ONE, ZERO, LaurentScalar

Word = tuple[int, ...]


@dataclass(frozen=True)
class GenIndex:
    row: int
    col: int
    n: int

    def __post_init__(self):
        if not (1 <= self.row <= self.n and 1 <= self.col <= self.n):
            raise ValueError(f"index ({self.row},{self.col}) out of range for n={self.n}")

    @property
    def flat(self) -> int:
        return (self.row - 1) * self.n + (self.col - 1)

    @property
    def eps(self) -> int:
        """Distance from the diagonal, |i - j|."""
        return abs(self.row - self.col)

    @classmethod
    def from_flat(cls, idx: int, n: int) -> "GenIndex":
        return cls(idx // n + 1, idx % n + 1, n)

    def __lt__(self, other: "GenIndex") -> bool:
        return lex_compare(self, other) < 0

    def __str__(self):
        return f"x[{self.row},{self.col}]"


def lex_compare(a: GenIndex, b: GenIndex) -> int:
    """-1, 0 or 1 according to n*i+j."""
    if a.n != b.n:
        raise ValueError(f"cannot compare generators of M_q({a.n}) and M_q({b.n})")
    ka = a.n * a.row + a.col
    kb = b.n * b.row + b.col
    return (ka > kb) - (ka < kb)


def gen(i: int, j: int, n: int) -> int:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"index ({i},{j}) out of range for n={n}")
    return (i - 1) * n + (j - 1)


def rc(idx: int, n: int) -> tuple[int, int]:
    """Row and column of a flat generator index (1-based)."""
    return idx // n + 1, idx % n + 1


def word(pairs: Iterable[tuple[int, int]], n: int) -> Word:
    return tuple(gen(i, j, n) for i, j in pairs)


def is_standard(w: Word) -> bool:
    return all(w[k] <= w[k + 1] for k in range(len(w) - 1))


def inversions(w: Word) -> int:
    m = len(w)
    return sum(1 for a in range(m) for b in range(a + 1, m) if w[a] > w[b])


def exponent_matrix(w: Word, n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for g in w:
        i, j = divmod(g, n)
        a[i][j] += 1
    return a


class NCPolynomial:
    """A finite sum of words with ``LaurentScalar`` coefficients.

    Multiplication with ``*`` is the free-algebra product (concatenation);
    products in a quotient algebra go through ``mutation.multiply``.
    """

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms: Mapping[Word, object] | None = None):
        self.n = n
        t: dict[Word, LaurentScalar] = {}
        if terms:
            for w, c in terms.items():
                c = c if isinstance(c, LaurentScalar) else LaurentScalar(c)
                if c:
                    w = tuple(w)
                    t[w] = t[w] + c if w in t else c
                    if not t[w]:
                        del t[w]
        self._t = t

    @classmethod
    def _raw(cls, n: int, t: dict) -> "NCPolynomial":
        obj = cls.__new__(cls)
        obj.n = n
        obj._t = t
        return obj

    @classmethod
    def zero(cls, n: int) -> "NCPolynomial":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "NCPolynomial":
        return cls._raw(n, {(): ONE})

    @classmethod
    def scalar(cls, n: int, c) -> "NCPolynomial":
        return cls(n, {(): c})

    @classmethod
    def x(cls, i: int, j: int, n: int) -> "NCPolynomial":
        return cls._raw(n, {(gen(i, j, n),): ONE})

    @classmethod
    def from_word(cls, w: Word, n: int, c=ONE) -> "NCPolynomial":
        return cls(n, {tuple(w): c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Word, LaurentScalar]:
        return dict(self._t)

    def items(self) -> list[tuple[Word, LaurentScalar]]:
        return sorted(self._t.items())

    def words(self) -> list[Word]:
        return sorted(self._t)

    def coefficient(self, w: Word) -> LaurentScalar:
        return self._t.get(tuple(w), ZERO)

    def __len__(self):
        return len(self._t)

    def __iter__(self) -> Iterator[tuple[Word, LaurentScalar]]:
        return iter(self.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_standard(self) -> bool:
        return all(is_standard(w) for w in self._t)

    def degrees(self) -> set[int]:
        return {len(w) for w in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "NCPolynomial"):
        if other.n != self.n:
            raise ValueError(f"mixing polynomials over M_q({self.n}) and M_q({other.n})")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            other = NCPolynomial.scalar(self.n, other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check(other)
        t = dict(self._t)
        for w, c in other._t.items():
            s = t[w] + c if w in t else c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return NCPolynomial._raw(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw(self.n, {w: -c for w, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            other = NCPolynomial.scalar(self.n, other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPolynomial":
        c = c if isinstance(c, LaurentScalar) else LaurentScalar(c)
        if not c:
            return NCPolynomial.zero(self.n)
        return NCPolynomial._raw(self.n, {w: c * v for w, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            return self.scale(other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check(other)
        t: dict[Word, LaurentScalar] = {}
        for w1, c1 in self._t.items():
            for w2, c2 in other._t.items():
                w = w1 + w2
                s = t[w] + c1 * c2 if w in t else c1 * c2
                if s:
                    t[w] = s
                else:
                    t.pop(w, None)
        return NCPolynomial._raw(self.n, t)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in the free algebra")
        out = NCPolynomial.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def map_coefficients(self, fn) -> "NCPolynomial":
        return NCPolynomial(self.n, {w: fn(c) for w, c in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            other = NCPolynomial.scalar(self.n, other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self):
        return hash((self.n, frozenset(self._t.items())))

    def __str__(self):
        return format_expr(self)

    def __repr__(self):
        return f"NCPolynomial(n={self.n}, {format_expr(self)!r})"


def descent_count(p: NCPolynomial | Word) -> int:
    """Maximum number of inversions over the words of ``p``."""
    if isinstance(p, tuple):
        return inversions(p)
    if p.is_zero():
        raise ValueError("descent statistic of the zero polynomial is undefined")
    return max(inversions(w) for w in p._t)


# ---------------------------------------------------------------------------
# printing


def _fmt_abs(c: Fraction | int) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_qmono(e: int, c) -> str:
    """Render |c| * q^e (no sign)."""
    if e == 0:
        return _fmt_abs(abs(c))
    if abs(c) == 1:
        return f"q^{e}"
    return f"{_fmt_abs(abs(c))}*q^{e}"


def _fmt_coeff(c: LaurentScalar) -> tuple[int, str]:
    """Sign and magnitude text of an expression coefficient.

    Single terms pull their sign out; sums are printed in descending powers of
    q inside parentheses with the sign arranged so the top term is positive.
    """
    items = sorted(c.terms, reverse=True)
    if len(items) == 1:
        e, v = items[0]
        return (-1 if v < 0 else 1), _fmt_qmono(e, v)
    sign = 1
    if items[0][1] < 0:
        sign = -1
        items = [(e, -v) for e, v in items]
    parts = []
    for k, (e, v) in enumerate(items):
        body = _fmt_qmono(e, v)
        if k == 0:
            parts.append(body)
        else:
            parts.append((" - " if v < 0 else " + ") + body)
    return sign, "(" + "".join(parts) + ")"


def format_word(w: Word, n: int) -> str:
    return "*".join("x[%d,%d]" % rc(g, n) for g in w)


def format_expr(p: NCPolynomial) -> str:
    """Canonical text: words in ascending lex order, coefficients as above."""
    if p.is_zero():
        return "0"
    out = []
    for k, (w, c) in enumerate(p.items()):
        sign, mag = _fmt_coeff(c)
        if not w:
            body = mag
        elif mag == "1":
            body = format_word(w, p.n)
        else:
            body = mag + "*" + format_word(w, p.n)
        if k == 0:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append((" - " if sign < 0 else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<x>x\s*\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\])"
    r"|(?P<num>\d+(?:\s*/\s*\d+)?)"
    r"|(?P<q>q)"
    r"|(?P<op>[-+*^()]))"
)


class _Parser:
    """Recursive descent over the expression grammar.

    Beyond the basic grammar it accepts a leading unary minus and signed
    exponents on q (``q^-1``), both of which the printer emits.
    """

    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
            if m.group("x"):
                i, j = int(m.group("i")), int(m.group("j"))
                if not (1 <= i <= n and 1 <= j <= n):
                    raise ParseError(f"index x[{i},{j}] out of range 1..{n}", start)
                self.toks.append(("x", gen(i, j, n), start))
            elif m.group("num"):
                self.toks.append(("num", Fraction(m.group("num").replace(" ", "")), start))
            elif m.group("q"):
                self.toks.append(("q", None, start))
            else:
                self.toks.append((m.group("op"), None, start))
            pos = m.end()
        self.k = 0

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else (None, None, len(self.text))

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0] or 'end of input'!r}", tok[2])
        self.k += 1
        return tok

    def parse(self) -> NCPolynomial:
        if not self.toks:
            raise ParseError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] is not None:
            raise ParseError(f"unexpected token {tok[0]!r}", tok[2])
        return p

    def expr(self) -> NCPolynomial:
        sign = 1
        if self.peek()[0] in ("-", "+"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> NCPolynomial:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> NCPolynomial:
        kind, val, pos = self.peek()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            k_tok = self.take("num")
            k = k_tok[1]
            if k.denominator != 1:
                raise ParseError("exponent must be an integer", k_tok[2])
            k = int(k)
            if neg:
                if kind != "q":
                    raise ParseError("negative exponents are only allowed on q", k_tok[2])
                return NCPolynomial.scalar(self.n, LaurentScalar.q(-k))
            if kind == "q":
                return NCPolynomial.scalar(self.n, LaurentScalar.q(k))
            return base**k
        return base

    def atom(self) -> NCPolynomial:
        kind, val, pos = self.take()
        if kind == "x":
            return NCPolynomial._raw(self.n, {(val,): ONE})
        if kind == "q":
            return NCPolynomial.scalar(self.n, LaurentScalar.q(1))
        if kind == "num":
            return NCPolynomial.scalar(self.n, val)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {kind or 'end of input'!r}", pos)


def parse_expr(text: str, n: int) -> NCPolynomial:
    """Parse an expression such as ``x[1,1]*x[2,2] - q*x[1,2]*x[2,1]``."""
    return _Parser(text, n).parse()
