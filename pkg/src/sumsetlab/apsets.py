"""Exact evaluation of structured sets on [0, cap] as AP-segment unions.

An APUnion represents a subset of [0, cap] as residue classes modulo m,
each class holding an IntervalUnion over the index space i (the element is
r + m*i).  Every DSL-expressible set evaluates to this form exactly, and
the form is closed under boolean operations and sumsets:

    (r1 + m*I1) + (r2 + m*I2)  =  (r1 + r2) + m*(I1 + I2),

so sumsets reduce to index-space interval sumsets, which stay exact at any
magnitude.  This is what the refinement machinery counts against windows;
nothing here ever enumerates elements.
"""

from __future__ import annotations

import math

from .errors import BudgetError, PreconditionError
from .intervals import IntervalUnion, iu_sumset
from .symbolic import (Blocks, Diff, Interval, Intersect, Periodic, Shift,
                       StructuredSet, Union)

CLASS_BUDGET = 4096
SEGMENT_BUDGET = 10**5


class APUnion:
    """Subset of [0, cap] as {residue: index IntervalUnion} modulo m."""

    __slots__ = ("modulus", "classes", "cap")

    def __init__(self, modulus: int, classes: dict[int, IntervalUnion], cap: int):
        if modulus < 1:
            raise PreconditionError("modulus must be >= 1")
        self.modulus = modulus
        self.cap = cap
        self.classes = {r: I for r, I in classes.items() if not I.is_empty()}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_interval_union(cls, U: IntervalUnion, cap: int) -> "APUnion":
        return cls(1, {0: U.clip(0, cap)}, cap)

    @classmethod
    def from_structured(cls, S: StructuredSet, cap: int) -> "APUnion":
        """Exact S intersect [0, cap]."""
        if isinstance(S, Periodic):
            classes = {}
            for r in sorted(S.residues):
                if r <= cap:
                    classes[r] = IntervalUnion.single(0, (cap - r) // S.modulus)
            return cls(S.modulus, classes, cap)
        if isinstance(S, (Blocks, Interval)):
            return cls.from_interval_union(S.intervals_in(0, cap), cap)
        if isinstance(S, Shift):
            inner = cls.from_structured(S.inner, max(cap - S.offset, 0) if S.offset >= 0 else cap - S.offset)
            return inner.shift(S.offset, cap)
        if isinstance(S, Union):
            return cls.from_structured(S.left, cap).union(cls.from_structured(S.right, cap))
        if isinstance(S, Intersect):
            return cls.from_structured(S.left, cap).intersect(cls.from_structured(S.right, cap))
        if isinstance(S, Diff):
            return cls.from_structured(S.left, cap).diff(cls.from_structured(S.right, cap))
        raise PreconditionError(f"cannot evaluate {type(S).__name__} to an APUnion")

    # -- helpers -------------------------------------------------------------

    def _segments(self) -> int:
        return sum(len(I.intervals) for I in self.classes.values())

    def _index_range(self, r: int, lo: int, hi: int) -> tuple[int, int]:
        """Index window [ilo, ihi] of class r covering elements in [lo, hi]."""
        ilo = -((r - lo) // self.modulus) if lo > r else 0
        ihi = (hi - r) // self.modulus
        return max(ilo, 0), ihi

    def align(self, m_new: int) -> "APUnion":
        """Re-express with a finer modulus (m_new must be a multiple)."""
        if m_new == self.modulus:
            return self
        if m_new % self.modulus != 0:
            raise PreconditionError("can only align to a multiple of the modulus")
        q = m_new // self.modulus
        if len(self.classes) * q > CLASS_BUDGET:
            raise BudgetError("aligned class count exceeds budget")
        classes: dict[int, list] = {}
        for r, I in self.classes.items():
            for j in range(q):
                c = r + self.modulus * j
                pairs = []
                for lo, hi in I.intervals:
                    first = lo + (j - lo) % q
                    if first > hi:
                        continue
                    last = hi - (hi - j) % q
                    pairs.append(((first - j) // q, (last - j) // q))
                if pairs:
                    classes.setdefault(c, []).extend(pairs)
        return APUnion(m_new, {c: IntervalUnion(p) for c, p in classes.items()}, self.cap)

    @staticmethod
    def _common(a: "APUnion", b: "APUnion") -> tuple["APUnion", "APUnion"]:
        m = math.lcm(a.modulus, b.modulus)
        return a.align(m), b.align(m)

    # -- set algebra ----------------------------------------------------------

    def union(self, other: "APUnion") -> "APUnion":
        a, b = self._common(self, other)
        cap = max(a.cap, b.cap)
        classes = dict(a.classes)
        for r, I in b.classes.items():
            classes[r] = classes[r].union(I) if r in classes else I
        return APUnion(a.modulus, classes, cap)

    def intersect(self, other: "APUnion") -> "APUnion":
        a, b = self._common(self, other)
        classes = {}
        for r, I in a.classes.items():
            J = b.classes.get(r)
            if J is not None:
                classes[r] = I.intersect(J)
        return APUnion(a.modulus, classes, min(a.cap, b.cap))

    def diff(self, other: "APUnion") -> "APUnion":
        a, b = self._common(self, other)
        classes = {}
        for r, I in a.classes.items():
            J = b.classes.get(r)
            classes[r] = I.diff(J) if J is not None else I
        return APUnion(a.modulus, classes, a.cap)

    def shift(self, t: int, cap: int) -> "APUnion":
        m = self.modulus
        classes: dict[int, list] = {}
        for r, I in self.classes.items():
            c = (r + t) % m
            delta = (r + t - c) // m
            pairs = []
            for lo, hi in I.intervals:
                a, b = lo + delta, hi + delta
                if b < 0:
                    continue
                a = max(a, 0)
                b = min(b, (cap - c) // m if cap >= c else -1)
                if a <= b:
                    pairs.append((a, b))
            if pairs:
                classes.setdefault(c, []).extend(pairs)
        return APUnion(m, {c: IntervalUnion(p) for c, p in classes.items()}, cap)

    def sumset(self, other: "APUnion", cap: int) -> "APUnion":
        """Exact (self + other) intersect [0, cap] (exact when both <= [0, cap])."""
        a, b = self._common(self, other)
        m = a.modulus
        if len(a.classes) * len(b.classes) > CLASS_BUDGET:
            raise BudgetError("sumset class count exceeds budget")
        classes: dict[int, list] = {}
        for r1, I1 in a.classes.items():
            for r2, I2 in b.classes.items():
                s = r1 + r2
                c, carry = s % m, s // m
                top = (cap - c) // m if cap >= c else -1
                if top < 0:
                    continue
                J = iu_sumset(I1, I2, I1.max() + I2.max())
                pairs = [(lo + carry, min(hi + carry, top))
                         for lo, hi in J.intervals if lo + carry <= top]
                if pairs:
                    classes.setdefault(c, []).extend(pairs)
        out = APUnion(m, {c: IntervalUnion(p) for c, p in classes.items()}, cap)
        if out._segments() > SEGMENT_BUDGET:
            raise BudgetError("sumset segment count exceeds budget")
        return out

    # -- counting --------------------------------------------------------------

    def count_in(self, lo: int, hi: int) -> int:
        """Exact |self intersect [lo, hi]|."""
        lo = max(lo, 0)
        if hi < lo:
            return 0
        total = 0
        for r, I in self.classes.items():
            ilo, ihi = self._index_range(r, lo, hi)
            if ihi >= ilo:
                total += I.count_in(ilo, ihi)
        return total

    def count_filtered(self, residues, k: int, lo: int, hi: int) -> int:
        """Exact |self intersect (residues + kZ) intersect [lo, hi]|."""
        lo = max(lo, 0)
        if hi < lo:
            return 0
        m = self.modulus
        g = math.gcd(m, k)
        q = k // g
        total = 0
        rset = {r % k for r in residues}
        for r, I in self.classes.items():
            # indices i with r + m*i = rho (mod k): i = i0 (mod q) per valid rho
            valid_i0 = set()
            step = m // g
            inv = pow(step, -1, q) if q > 1 else 0
            for rho in rset:
                if (rho - r) % g:
                    continue
                if q == 1:
                    valid_i0.add(0)
                else:
                    valid_i0.add(((rho - r) // g * inv) % q)
            if not valid_i0:
                continue
            ilo, ihi = self._index_range(r, lo, hi)
            if ihi < ilo:
                continue
            for a, b in I.intervals:
                aa, bb = max(a, ilo), min(b, ihi)
                if aa > bb:
                    continue
                for i0 in valid_i0:
                    first = aa + (i0 - aa) % q
                    if first <= bb:
                        total += (bb - first) // q + 1
        return total

    def residues_mod(self, k: int) -> frozenset[int]:
        """Residues mod k hit by the set."""
        out: set[int] = set()
        m = self.modulus
        g = math.gcd(m, k)
        q = k // g
        for r, I in self.classes.items():
            for a, b in I.intervals:
                # residues of r + m*i cycle with period q in i, so q consecutive
                # indices from one interval exhaust what that interval can hit
                for i in range(a, min(b, a + q - 1) + 1):
                    out.add((r + m * i) % k)
                if len(out) == k:
                    return frozenset(out)
        return frozenset(out)

    def missing_extremes(self, residues, k: int, lo: int, hi: int):
        """(first, last) elements of ((residues + kZ) intersect [lo, hi]) \\ self.

        Returns (None, None) when the periodized superset is fully covered.
        """
        lo = max(lo, 0)
        m = math.lcm(self.modulus, k)
        lifted = self.align(m)
        first = last = None
        for c in range(m):
            if c % k not in residues:
                continue
            ilo, ihi = lifted._index_range(c, lo, hi)
            if ihi < ilo:
                continue
            full = IntervalUnion.single(ilo, ihi)
            I = lifted.classes.get(c)
            missing = full if I is None else full.diff(I)
            if missing.is_empty():
                continue
            x_first = c + m * missing.min()
            x_last = c + m * missing.max()
            if first is None or x_first < first:
                first = x_first
            if last is None or x_last > last:
                last = x_last
        return first, last

    def to_interval_union(self, budget: int = 10**6) -> IntervalUnion:
        """Materialize; the budget bounds the number of produced intervals."""
        pieces = 0
        for r, I in self.classes.items():
            if self.modulus == 1:
                pieces += len(I.intervals)
            else:
                pieces += I.count_in(0, (self.cap - r) // self.modulus)
            if pieces > budget:
                raise BudgetError("APUnion too large to materialize")
        pairs = []
        for r, I in self.classes.items():
            for a, b in I.intervals:
                if self.modulus == 1:
                    pairs.append((r + a, r + b))
                else:
                    pairs.extend((r + self.modulus * i, r + self.modulus * i)
                                 for i in range(a, b + 1))
        return IntervalUnion(pairs)

    def is_empty(self) -> bool:
        return not self.classes

    def min(self) -> int:
        if not self.classes:
            raise PreconditionError("empty set has no minimum")
        return min(r + self.modulus * I.min() for r, I in self.classes.items())

    def __repr__(self):
        return f"APUnion(mod {self.modulus}, {len(self.classes)} classes, cap={self.cap})"
