"""Exact scalars: Laurent polynomials in q over Q and their fraction field Q(q).

``LaurentScalar`` is the coefficient ring for every algebra element in the
package.  ``RationalFunction`` only shows up in exact rank computations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


def _clean(c) -> Number:
    # ints are much faster than Fractions; keep integral values as int
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_rat(c: Number) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class LaurentScalar:
    """An element of Q[q, q^-1], stored as ``{exponent: coefficient}``.

    Instances are immutable.  Zero coefficients are never stored, so the zero
    element has an empty term map.
    """

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[int, Number] | Number | None = None):
        if terms is None:
            t = {}
        elif isinstance(terms, Mapping):
            t = {}
            for e, c in terms.items():
                c = _clean(c)
                if c:
                    t[int(e)] = c
        else:
            c = _clean(terms)
            t = {0: c} if c else {}
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentScalar":
        obj = cls.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    @classmethod
    def q(cls, k: int = 1, c: Number = 1) -> "LaurentScalar":
        """The monomial ``c * q^k``."""
        return cls({k: c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Number], ...]:
        return tuple(sorted(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def min_exp(self) -> int:
        return min(self._t)

    def max_exp(self) -> int:
        return max(self._t)

    def coefficient(self, e: int) -> Number:
        return self._t.get(e, 0)

    def content(self) -> Fraction:
        """Positive rational gcd of the coefficients (1 for zero)."""
        if not self._t:
            return Fraction(1)
        num = 0
        den = 1
        from math import gcd

        for c in self._t.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentScalar | None":
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._t:
            return self
        if not self._t:
            return o
        t = dict(self._t)
        for e, c in o._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = _clean(s) if isinstance(s, Fraction) else s
            else:
                t.pop(e, None)
        return LaurentScalar._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._t, o._t
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            (ea, ca), = a.items()
            (eb, cb), = b.items()
            c = ca * cb
            return LaurentScalar._raw({ea + eb: _clean(c) if isinstance(c, Fraction) else c})
        t: dict[int, Number] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                t[e] = t.get(e, 0) + ca * cb
        return LaurentScalar._raw({e: _clean(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible in Q[q, q^-1]")
            (e, c), = self._t.items()
            return LaurentScalar({e * k: Fraction(1, 1) / Fraction(c) ** (-k)})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: Number) -> "LaurentScalar":
        return self * LaurentScalar(c)

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by q^k."""
        return LaurentScalar._raw({e + k: c for e, c in self._t.items()})

    def inverse(self) -> "LaurentScalar":
        return self ** -1

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- specialization ---------------------------------------------------

    def evaluate(self, q0) -> Fraction:
        """Substitute ``q := q0`` exactly.  ``q0`` must be a nonzero rational."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise ValueError("cannot specialize a Laurent polynomial at q = 0")
        total = Fraction(0)
        for e, c in self._t.items():
            total += c * q0**e
        return total

    def evaluate_mod(self, q0: int, p: int) -> int:
        """Substitute ``q := q0`` in Z/p; ``q0`` must be a unit mod p."""
        total = 0
        for e, c in self._t.items():
            if isinstance(c, Fraction):
                cm = c.numerator * pow(c.denominator, -1, p)
            else:
                cm = c
            total += cm * pow(q0, e, p)
        return total % p

    # -- text -------------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for k, (e, c) in enumerate(sorted(self._t.items())):
            body = f"{_fmt_rat(abs(c))}*q^{e}"
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentScalar({str(self)!r})"

    _TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)\s*(?:\*\s*q\s*\^\s*([+-]?\d+))?\s*")

    @classmethod
    def parse(cls, text: str) -> "LaurentScalar":
        """Inverse of ``str``: ``'-1*q^-1 + 1*q^1'`` style text."""
        s = text.strip()
        if s == "0":
            return ZERO
        t: dict[int, Fraction] = {}
        pos = 0
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse Laurent scalar at position {pos}: {text!r}")
            sign, coef, exp = m.groups()
            if not first and not sign:
                raise ValueError(f"missing sign before term at position {pos}: {text!r}")
            c = Fraction(coef) * (-1 if sign == "-" else 1)
            e = int(exp) if exp is not None else 0
            t[e] = t.get(e, 0) + c
            pos = m.end()
            first = False
        return cls(t)


ZERO = LaurentScalar()
ONE = LaurentScalar(1)
Q = LaurentScalar.q(1)
QINV = LaurentScalar.q(-1)


def laurent_arith(a: LaurentScalar, b: LaurentScalar, op: str) -> LaurentScalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def evaluate_at(a: LaurentScalar, q0) -> Fraction:
    return a.evaluate(q0)


# ---------------------------------------------------------------------------
# polynomial helpers over Q (dense, ascending coefficient lists)


def _to_dense(a: LaurentScalar) -> tuple[int, list[Fraction]]:
    lo, hi = a.min_exp(), a.max_exp()
    coeffs = [Fraction(0)] * (hi - lo + 1)
    for e, c in a._t.items():
        coeffs[e - lo] = Fraction(c)
    return lo, coeffs


def _from_dense(lo: int, coeffs: Iterable[Fraction]) -> LaurentScalar:
    return LaurentScalar({lo + i: c for i, c in enumerate(coeffs) if c})


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        quot[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a.pop()
        _trim(a)
    return _trim(quot), a


def laurent_gcd(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Monic gcd in Q[q, q^-1], normalized to have lowest exponent 0.

    Units of the Laurent ring are c*q^k, so the result is only defined up to
    such a factor; this fixes the representative.
    """
    if not a:
        if not b:
            return ZERO
        a, b = b, a
    if not b:
        lo, pa = _to_dense(a)
        return _from_dense(0, [c / pa[-1] for c in pa])
    _, pa = _to_dense(a)
    _, pb = _to_dense(b)
    while _trim(pb):
        _, r = _poly_divmod(pa, pb)
        pa, pb = pb, r
    return _from_dense(0, [c / pa[-1] for c in pa])


def exact_divide(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Return ``a / b`` in Q[q, q^-1]; raise ``ValueError`` if it does not divide."""
    if not b:
        raise ZeroDivisionError("division by zero Laurent scalar")
    if not a:
        return ZERO
    if b.is_monomial():
        return a * b.inverse()
    la, pa = _to_dense(a)
    lb, pb = _to_dense(b)
    quot, rem = _poly_divmod(pa, pb)
    if _trim(rem):
        raise ValueError("Laurent scalar does not divide exactly")
    return _from_dense(la - lb, quot)


class RationalFunction:
    """An element of Q(q) as ``numerator / denominator`` of Laurent scalars.

    Representatives are content-normalized on construction: the denominator
    has lowest exponent 0 and lowest coefficient 1.  ``reduced()`` also
    cancels the polynomial gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, reduce: bool = False):
        num = num if isinstance(num, LaurentScalar) else LaurentScalar(num)
        den = den if isinstance(den, LaurentScalar) else LaurentScalar(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        if reduce and not den.is_monomial():
            g = laurent_gcd(num, den)
            if not g.is_monomial():
                num = exact_divide(num, g)
                den = exact_divide(den, g)
        e0 = den.min_exp()
        c0 = Fraction(den.coefficient(e0))
        unit = LaurentScalar({-e0: 1 / c0})
        self.num = num * unit
        self.den = den * unit

    def reduced(self) -> "RationalFunction":
        return RationalFunction(self.num, self.den, reduce=True)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (LaurentScalar, int, Fraction)):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def evaluate(self, q0) -> Fraction:
        d = self.den.evaluate(q0)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q = {q0}")
        return self.num.evaluate(q0) / d

    def __str__(self):
        if self.den == ONE:
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def ratfun_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
