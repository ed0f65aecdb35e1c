"""Exact unions of integer intervals in N, with 128-bit bounds.

An IntervalUnion is a sorted tuple of disjoint, non-adjacent closed
intervals [a, b] with 0 <= a <= b < 2^127.  All arithmetic is exact
(Python ints); counting never enumerates elements.  Sumsets are computed
pairwise on intervals and are exact for subsets of N truncated at a cap,
because elements above the cap cannot contribute to sums at or below it.
"""

from __future__ import annotations

from .errors import BudgetError, PreconditionError

VALUE_LIMIT = 1 << 127
INTERVAL_BUDGET = 10**6


def _normalize(pairs) -> tuple[tuple[int, int], ...]:
    pairs = sorted((int(a), int(b)) for a, b in pairs)
    out: list[list[int]] = []
    for a, b in pairs:
        if a > b:
            raise PreconditionError(f"bad interval [{a},{b}]")
        if a < 0 or b >= VALUE_LIMIT:
            raise PreconditionError(f"interval [{a},{b}] outside [0, 2^127)")
        if out and a <= out[-1][1] + 1:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


class IntervalUnion:
    """Immutable normalized union of closed integer intervals."""

    __slots__ = ("intervals",)

    EMPTY: "IntervalUnion"

    def __init__(self, pairs=()):
        object.__setattr__(self, "intervals", _normalize(pairs))

    def __setattr__(self, *a):
        raise AttributeError("IntervalUnion is immutable")

    @classmethod
    def single(cls, a: int, b: int) -> "IntervalUnion":
        return cls([(a, b)])

    @classmethod
    def of_points(cls, points) -> "IntervalUnion":
        return cls([(p, p) for p in points])

    def count(self) -> int:
        return sum(b - a + 1 for a, b in self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def min(self) -> int:
        if not self.intervals:
            raise PreconditionError("empty union has no minimum")
        return self.intervals[0][0]

    def max(self) -> int:
        if not self.intervals:
            raise PreconditionError("empty union has no maximum")
        return self.intervals[-1][1]

    def contains(self, x: int) -> bool:
        lo, hi = 0, len(self.intervals) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            a, b = self.intervals[mid]
            if x < a:
                hi = mid - 1
            elif x > b:
                lo = mid + 1
            else:
                return True
        return False

    def clip(self, lo: int, hi: int) -> "IntervalUnion":
        """Intersection with the window [lo, hi]."""
        if hi < lo:
            return IntervalUnion()
        out = []
        for a, b in self.intervals:
            if b < lo:
                continue
            if a > hi:
                break
            out.append((max(a, lo), min(b, hi)))
        return IntervalUnion(out)

    def count_in(self, lo: int, hi: int) -> int:
        if hi < lo:
            return 0
        total = 0
        for a, b in self.intervals:
            if b < lo:
                continue
            if a > hi:
                break
            total += min(b, hi) - max(a, lo) + 1
        return total

    def shift(self, t: int) -> "IntervalUnion":
        """Translate by t, clipping below 0 (sets live in N)."""
        out = []
        for a, b in self.intervals:
            if b + t < 0:
                continue
            out.append((max(0, a + t), b + t))
        return IntervalUnion(out)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(list(self.intervals) + list(other.intervals))

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        i = j = 0
        A, B = self.intervals, other.intervals
        while i < len(A) and j < len(B):
            a1, b1 = A[i]
            a2, b2 = B[j]
            lo, hi = max(a1, a2), min(b1, b2)
            if lo <= hi:
                out.append((lo, hi))
            if b1 < b2:
                i += 1
            else:
                j += 1
        return IntervalUnion(out)

    def diff(self, other: "IntervalUnion") -> "IntervalUnion":
        out = []
        j = 0
        B = other.intervals
        for a, b in self.intervals:
            cur = a
            while j < len(B) and B[j][1] < cur:
                j += 1
            k = j
            while cur <= b:
                if k >= len(B) or B[k][0] > b:
                    out.append((cur, b))
                    break
                a2, b2 = B[k]
                if a2 > cur:
                    out.append((cur, a2 - 1))
                cur = b2 + 1
                k += 1
        return IntervalUnion(out)

    def symmetric_diff(self, other: "IntervalUnion") -> "IntervalUnion":
        return self.diff(other).union(other.diff(self))

    def residues(self, k: int) -> frozenset[int]:
        """Residues mod k touched by the union."""
        if k < 1:
            raise PreconditionError("modulus must be >= 1")
        hit: set[int] = set()
        for a, b in self.intervals:
            if b - a + 1 >= k:
                return frozenset(range(k))
            r = a % k
            for _ in range(b - a + 1):
                hit.add(r)
                r = (r + 1) % k
            if len(hit) == k:
                break
        return frozenset(hit)

    def elements(self):
        for a, b in self.intervals:
            yield from range(a, b + 1)

    def to_pairs(self) -> list[list[int]]:
        return [[a, b] for a, b in self.intervals]

    def __eq__(self, other):
        return isinstance(other, IntervalUnion) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        inner = ",".join(f"[{a},{b}]" for a, b in self.intervals)
        return f"IntervalUnion({inner})"


IntervalUnion.EMPTY = IntervalUnion()


def iu_boolean(U: IntervalUnion, V: IntervalUnion, op: str) -> IntervalUnion:
    """Boolean combination: op is "union", "intersect", or "diff"."""
    if op == "union":
        return U.union(V)
    if op == "intersect":
        return U.intersect(V)
    if op == "diff":
        return U.diff(V)
    raise PreconditionError(f"unknown boolean op {op!r}")


def iu_count(U: IntervalUnion, lo: int, hi: int) -> int:
    """Exact |U intersect [lo, hi]|."""
    return U.count_in(lo, hi)


def iu_sumset(U: IntervalUnion, V: IntervalUnion, cap: int,
              budget: int = INTERVAL_BUDGET) -> IntervalUnion:
    """(U + V) intersect [0, cap], exact for U, V <= [0, cap].

    Interval sums [a1+a2, b1+b2] are themselves intervals, so the sumset of
    two unions is the normalized union of the pairwise sums.
    """
    if cap < 0 or cap >= VALUE_LIMIT:
        raise PreconditionError("cap must be in [0, 2^127)")
    if U.is_empty() or V.is_empty():
        return IntervalUnion()
    if U.max() > cap or V.max() > cap:
        raise PreconditionError("iu_sumset inputs must be subsets of [0, cap]")
    if len(U.intervals) * len(V.intervals) > budget:
        raise BudgetError("iu_sumset interval budget exceeded")
    pairs = []
    for a1, b1 in U.intervals:
        for a2, b2 in V.intervals:
            lo = a1 + a2
            if lo > cap:
                break
            pairs.append((lo, min(b1 + b2, cap)))
    return IntervalUnion(pairs)


def count_residue_class(residue: int, k: int, lo: int, hi: int) -> int:
    """|{x in [lo, hi] : x = residue mod k}|, exact."""
    if hi < lo:
        return 0
    residue %= k
    first = lo + (residue - lo) % k
    if first > hi:
        return 0
    return (hi - first) // k + 1


def count_periodized(residues, k: int, lo: int, hi: int) -> int:
    """Exact |(R + kZ) intersect [lo, hi]| without materialization."""
    return sum(count_residue_class(r, k, lo, hi) for r in residues)


def periodize_union(U: IntervalUnion, k: int, lo: int, hi: int,
                    budget: int = INTERVAL_BUDGET) -> IntervalUnion:
    """(U + kZ) intersect [lo, hi], materialized.

    Raises BudgetError when the window would hold too many residue-class
    intervals; use count_periodized for counting at that scale.
    """
    if k < 1:
        raise PreconditionError("modulus must be >= 1")
    if hi < lo:
        return IntervalUnion()
    R = sorted(U.residues(k))
    if len(R) == k:
        return IntervalUnion([(max(lo, 0), hi)])
    approx = ((hi - lo) // k + 2) * len(R)
    if approx > budget:
        raise BudgetError(
            "periodized union exceeds the interval budget; use count_periodized"
        )
    pairs = []
    for r in R:
        first = lo + (r - lo) % k
        x = first
        while x <= hi:
            pairs.append((x, x))
            x += k
    return IntervalUnion(pairs)
