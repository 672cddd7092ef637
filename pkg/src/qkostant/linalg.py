"""Exact rank of sparse column sets with Laurent-polynomial entries.

Columns are dicts ``row_key -> LaurentScalar``.  Rank over Q(q) is computed
by fraction-free elimination over Z[q] (columns are cleared of q-powers and
rational denominators first); rank at a specialization q = q0 is computed
over Q with Fractions.  Both use the same incremental echelon: a basis vector
is keyed by its largest row key, and a new column is reduced by repeatedly
cancelling its largest key against the basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping, Sequence

from sympy.polys.densearith import dup_exquo, dup_mul, dup_neg, dup_sub
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd, dup_inner_gcd

from .coeff import LaurentScalar

Column = Mapping[Hashable, LaurentScalar]


def _column_to_zpoly(col: Column) -> dict:
    """Scale a column by a unit of Q[q, q^-1] so every entry is in Z[q].

    Returns {row: dense coefficient list, highest degree first}.
    """
    lo = min(c.min_exp() for c in col.values())
    den = 1
    for c in col.values():
        for _, v in c.terms:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
    out = {}
    for r, c in col.items():
        hi = c.max_exp()
        coeffs = [0] * (hi - lo + 1)
        for e, v in c.terms:
            coeffs[hi - e] = int(v * den)
        out[r] = dup_strip([ZZ(x) for x in coeffs])
    return out


def _poly_content_gcd(polys: Iterable[list]) -> list:
    g = None
    for p in polys:
        g = p if g is None else dup_gcd(g, p, ZZ)
        if len(g) == 1 and abs(g[0]) == 1:
            return [ZZ(1)]
    return g or [ZZ(1)]


def _primitive(v: dict) -> dict:
    g = _poly_content_gcd(v.values())
    if len(g) == 1 and abs(g[0]) == 1:
        return v
    return {r: dup_exquo(p, g, ZZ) for r, p in v.items()}


class _Echelon:
    def __init__(self, order):
        self.basis: dict = {}
        self.order = order  # row_key -> sortable rank

    def add(self, v: dict) -> bool:
        """Reduce v against the basis; keep it if something survives."""
        raise NotImplementedError


class PolyEchelon(_Echelon):
    """Incremental echelon form over Z[q] (rank over Q(q))."""

    def add(self, v: dict) -> bool:
        order = self.order
        while v:
            p = max(v, key=order)
            b = self.basis.get(p)
            if b is None:
                self.basis[p] = _primitive(v)
                return True
            bp, vp = b[p], v[p]
            _, bp_g, vp_g = dup_inner_gcd(bp, vp, ZZ)
            new = {}
            for r in set(v) | set(b):
                x = v.get(r)
                y = b.get(r)
                if x is not None:
                    x = dup_mul(bp_g, x, ZZ)
                if y is not None:
                    y = dup_mul(vp_g, y, ZZ)
                z = x if y is None else (dup_neg(y, ZZ) if x is None else dup_sub(x, y, ZZ))
                if z:
                    new[r] = z
            new.pop(p, None)
            v = _primitive(new) if new else new
        return False


class RationalEchelon(_Echelon):
    """Incremental echelon form over Q."""

    def add(self, v: dict) -> bool:
        order = self.order
        while v:
            p = max(v, key=order)
            b = self.basis.get(p)
            if b is None:
                inv = 1 / v[p]
                self.basis[p] = {r: x * inv for r, x in v.items()}
                return True
            f = v[p]
            new = dict(v)
            for r, y in b.items():
                z = new.get(r, 0) - f * y
                if z:
                    new[r] = z
                else:
                    new.pop(r, None)
            v = new
        return False


class ModularEchelon(_Echelon):
    """Incremental echelon form over Z/p."""

    def __init__(self, order, p: int):
        super().__init__(order)
        self.p = p

    def add(self, v: dict) -> bool:
        order, P = self.order, self.p
        v = {r: x % P for r, x in v.items() if x % P}
        while v:
            p = max(v, key=order)
            b = self.basis.get(p)
            if b is None:
                inv = pow(v[p], -1, P)
                self.basis[p] = {r: x * inv % P for r, x in v.items()}
                return True
            f = v[p]
            new = dict(v)
            for r, y in b.items():
                z = (new.get(r, 0) - f * y) % P
                if z:
                    new[r] = z
                else:
                    new.pop(r, None)
            v = new
        return False


def _order_for(columns: Sequence[Column], row_order=None):
    if row_order is not None:
        return row_order.__getitem__
    keys = sorted({r for col in columns for r in col})
    idx = {r: i for i, r in enumerate(keys)}
    return idx.__getitem__


def rank_generic(columns: Sequence[Column], row_order: Mapping | None = None) -> int:
    """Rank over Q(q)."""
    ech = PolyEchelon(_order_for(columns, row_order))
    rank = 0
    for col in columns:
        col = {r: c for r, c in col.items() if c}
        if col and ech.add(_column_to_zpoly(col)):
            rank += 1
    return rank


def specialize_column(col: Column, q0: Fraction) -> dict:
    out = {}
    for r, c in col.items():
        v = c.evaluate(q0)
        if v:
            out[r] = v
    return out


def rank_at(columns: Sequence[Column], q0, row_order: Mapping | None = None) -> int:
    """Rank over Q after substituting q = q0."""
    q0 = Fraction(q0)
    ech = RationalEchelon(_order_for(columns, row_order))
    rank = 0
    for col in columns:
        v = specialize_column(col, q0)
        if v and ech.add(v):
            rank += 1
    return rank


def rank_mod(columns: Sequence[Column], q0: int, p: int, row_order: Mapping | None = None) -> int:
    """Rank over Z/p after substituting q = q0 (mod p)."""
    ech = ModularEchelon(_order_for(columns, row_order), p)
    rank = 0
    for col in columns:
        v = {r: c.evaluate_mod(q0, p) for r, c in col.items()}
        if ech.add(v):
            rank += 1
    return rank


def rank_rational(columns: Sequence[Mapping[Hashable, Fraction]], row_order: Mapping | None = None) -> int:
    """Rank of columns that already have rational entries."""
    ech = RationalEchelon(_order_for(columns, row_order))
    rank = 0
    for col in columns:
        v = {r: Fraction(x) for r, x in col.items() if x}
        if v and ech.add(v):
            rank += 1
    return rank
