"""Symbolic subsets of N: schedules, a small AST, and the set DSL.

A StructuredSet describes a (typically infinite) subset of N without
enumerating it: periodic residue classes, scheduled blocks
union_n [ceil(p*lo_n), floor(q*hi_n)], finite intervals, shifts, and
boolean combinations.  Counting and windowed materialization are exact;
counting prefers closed forms and falls back to materialization within an
interval budget.

Schedules produce (lo_n, hi_n) pairs.  The scalar kinds (list, geom,
superexp, tower) have lo_n = hi_n; the rec3 recursion lo_{n+1} = 3*hi_n,
hi_n = n^2 * lo_n carries genuinely distinct pairs.  All values are kept
below 2^127 so downstream interval arithmetic stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError, CapacityError, DslSyntaxError, PreconditionError
from .intervals import INTERVAL_BUDGET, VALUE_LIMIT, IntervalUnion, count_periodized

SCHEDULE_KINDS = ("list", "geom", "superexp", "tower", "rec3")


@dataclass(frozen=True)
class Schedule:
    """A finite, strictly increasing sequence of block bounds."""

    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise PreconditionError(f"unknown schedule kind {self.kind!r}")
        self.pairs()  # validates ranges eagerly

    @classmethod
    def explicit(cls, values) -> "Schedule":
        return cls("list", tuple(int(v) for v in values))

    @classmethod
    def geometric(cls, base: int, count: int) -> "Schedule":
        return cls("geom", (base, count))

    @classmethod
    def superexp(cls, count: int) -> "Schedule":
        return cls("superexp", (count,))

    @classmethod
    def tower(cls, count: int) -> "Schedule":
        return cls("tower", (count,))

    @classmethod
    def rec3(cls, count: int) -> "Schedule":
        return cls("rec3", (count,))

    def pairs(self) -> list[tuple[int, int]]:
        """(lo_n, hi_n) per term, each hi strictly increasing, all < 2^127."""
        kind, p = self.kind, self.params
        if kind == "list":
            vals = list(p)
            out = [(v, v) for v in vals]
        elif kind == "geom":
            base, count = p
            if base < 2 or count < 1:
                raise PreconditionError("geom schedule needs base >= 2, count >= 1")
            out = [(base**n, base**n) for n in range(1, count + 1)]
        elif kind == "superexp":
            (count,) = p
            if count < 1:
                raise PreconditionError("superexp schedule needs count >= 1")
            if count > 15:
                raise CapacityError("superexp values exceed 2^127 beyond 15 terms")
            out = [(1 << (n * (n + 1) // 2),) * 2 for n in range(1, count + 1)]
        elif kind == "tower":
            (count,) = p
            if count < 1:
                raise PreconditionError("tower schedule needs count >= 1")
            if count > 6:
                raise CapacityError("tower values exceed 2^127 beyond 6 terms")
            out = [(1 << (1 << n),) * 2 for n in range(1, count + 1)]
        else:  # rec3
            (count,) = p
            if count < 1:
                raise PreconditionError("rec3 schedule needs count >= 1")
            out = []
            a = 1
            for n in range(1, count + 1):
                b = n * n * a
                if b >= VALUE_LIMIT:
                    raise CapacityError("rec3 values exceed 2^127 at term %d" % n)
                out.append((a, b))
                a = 3 * b
        last = -1
        for lo, hi in out:
            if not 0 <= lo <= hi < VALUE_LIMIT:
                raise CapacityError("schedule value outside [0, 2^127)")
            if hi <= last:
                raise PreconditionError("schedule values must be strictly increasing")
            last = hi
        return out

    def values(self) -> list[int]:
        """The upper bounds hi_n (what window constructions consume)."""
        return [hi for _, hi in self.pairs()]

    def to_text(self) -> str:
        if self.kind == "list":
            return "list(" + ",".join(map(str, self.params)) + ")"
        return f"{self.kind}(" + ",".join(map(str, self.params)) + ")"


def _ceil_mul(frac: Fraction, n: int) -> int:
    return -((-frac.numerator * n) // frac.denominator)


def _floor_mul(frac: Fraction, n: int) -> int:
    return (frac.numerator * n) // frac.denominator


class StructuredSet:
    """Base class for symbolic subsets of N."""

    def member(self, x: int) -> bool:
        raise NotImplementedError

    def intervals_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> IntervalUnion:
        """Exact materialization of self intersect [lo, hi]."""
        raise NotImplementedError

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        """Exact |self intersect [lo, hi]|, via closed forms where possible."""
        raise NotImplementedError

    def materialization_cost(self, lo: int, hi: int) -> int:
        """Upper bound on the interval count of intervals_in."""
        raise NotImplementedError

    def periodic_profile(self) -> tuple[frozenset[int], int]:
        """(residues, m) with self contained in residues + mZ.

        This is a containment profile: m = 1 with residues {0} means "no
        periodic constraint known".  For sets whose density is carried by
        their periodic part this doubles as the eventual residue support.
        """
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def __or__(self, other):
        return Union(self, other)

    def __and__(self, other):
        return Intersect(self, other)

    def __sub__(self, other):
        return Diff(self, other)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"


NO_CONSTRAINT = (frozenset({0}), 1)


def _combine_profiles(p1, p2, mode: str) -> tuple[frozenset[int], int]:
    r1, m1 = p1
    r2, m2 = p2
    m = math.lcm(m1, m2)
    lift1 = {r % m for base in r1 for r in range(base, m, m1)}
    lift2 = {r % m for base in r2 for r in range(base, m, m2)}
    out = lift1 | lift2 if mode == "union" else lift1 & lift2
    return frozenset(out), m


@dataclass(frozen=True)
class Periodic(StructuredSet):
    residues: frozenset[int]
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise PreconditionError("modulus must be >= 1")
        object.__setattr__(self, "residues", frozenset(r % self.modulus for r in self.residues))
        if not self.residues:
            raise PreconditionError("periodic set needs at least one residue")

    def member(self, x: int) -> bool:
        return x >= 0 and x % self.modulus in self.residues

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        return count_periodized(self.residues, self.modulus, max(lo, 0), hi)

    def materialization_cost(self, lo: int, hi: int) -> int:
        if hi < lo:
            return 0
        if len(self.residues) == self.modulus:
            return 1
        return ((hi - lo) // self.modulus + 2) * len(self.residues)

    def intervals_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> IntervalUnion:
        lo = max(lo, 0)
        if hi < lo:
            return IntervalUnion()
        if len(self.residues) == self.modulus:
            return IntervalUnion([(lo, hi)])
        if self.materialization_cost(lo, hi) > budget:
            raise BudgetError(
                "periodic set over this window exceeds the interval budget; use count_in"
            )
        pairs = []
        for r in sorted(self.residues):
            x = lo + (r - lo) % self.modulus
            while x <= hi:
                pairs.append((x, x))
                x += self.modulus
        return IntervalUnion(pairs)

    def periodic_profile(self):
        return self.residues, self.modulus

    def to_text(self) -> str:
        return "periodic(" + ",".join(map(str, sorted(self.residues))) + f";{self.modulus})"


@dataclass(frozen=True)
class Blocks(StructuredSet):
    """union_n [ceil(p * lo_n), floor(q * hi_n)] over a schedule."""

    schedule: Schedule
    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.p < 0 or self.p > self.q:
            raise PreconditionError("blocks need 0 <= p <= q")

    def block_pairs(self) -> list[tuple[int, int]]:
        out = []
        for lo, hi in self.schedule.pairs():
            a = _ceil_mul(self.p, lo)
            b = _floor_mul(self.q, hi)
            if a <= b:
                out.append((a, b))
        return out

    def as_union(self) -> IntervalUnion:
        return IntervalUnion(self.block_pairs())

    def member(self, x: int) -> bool:
        return x >= 0 and self.as_union().contains(x)

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        return self.as_union().count_in(max(lo, 0), hi)

    def materialization_cost(self, lo: int, hi: int) -> int:
        return len(self.schedule.pairs())

    def intervals_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> IntervalUnion:
        return self.as_union().clip(max(lo, 0), hi)

    def periodic_profile(self):
        return NO_CONSTRAINT

    def to_text(self) -> str:
        return f"blocks({self.schedule.to_text()},{self.p},{self.q})"


@dataclass(frozen=True)
class Interval(StructuredSet):
    a: int
    b: int

    def __post_init__(self):
        if not 0 <= self.a <= self.b < VALUE_LIMIT:
            raise PreconditionError("interval needs 0 <= a <= b < 2^127")

    def member(self, x: int) -> bool:
        return self.a <= x <= self.b

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        lo, hi = max(lo, self.a), min(hi, self.b)
        return max(0, hi - lo + 1)

    def materialization_cost(self, lo: int, hi: int) -> int:
        return 1

    def intervals_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> IntervalUnion:
        lo, hi = max(lo, self.a), min(hi, self.b)
        return IntervalUnion([(lo, hi)]) if lo <= hi else IntervalUnion()

    def periodic_profile(self):
        return NO_CONSTRAINT

    def to_text(self) -> str:
        return f"interval({self.a},{self.b})"


@dataclass(frozen=True)
class Shift(StructuredSet):
    inner: StructuredSet
    offset: int

    def member(self, x: int) -> bool:
        return x >= 0 and self.inner.member(x - self.offset)

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        return self.inner.count_in(max(lo, 0) - self.offset, hi - self.offset, budget)

    def materialization_cost(self, lo: int, hi: int) -> int:
        return self.inner.materialization_cost(lo - self.offset, hi - self.offset)

    def intervals_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> IntervalUnion:
        lo = max(lo, 0)
        inner = self.inner.intervals_in(lo - self.offset, hi - self.offset, budget)
        return inner.shift(self.offset).clip(lo, hi)

    def periodic_profile(self):
        r, m = self.inner.periodic_profile()
        return frozenset((x + self.offset) % m for x in r), m

    def to_text(self) -> str:
        return f"shift({self.inner.to_text()},{self.offset})"


class _Boolean(StructuredSet):
    op = "?"

    def __init__(self, left: StructuredSet, right: StructuredSet):
        self.left = left
        self.right = right

    def materialization_cost(self, lo: int, hi: int) -> int:
        cl = self.left.materialization_cost(lo, hi)
        cr = self.right.materialization_cost(lo, hi)
        if self.op == "&":
            return min(cl, cr) + 1
        return cl + cr + 1

    def intervals_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> IntervalUnion:
        L = self.left.intervals_in(lo, hi, budget)
        R = self.right.intervals_in(lo, hi, budget)
        if self.op == "|":
            return L.union(R)
        if self.op == "&":
            return L.intersect(R)
        return L.diff(R)

    def to_text(self) -> str:
        def wrap(node):
            text = node.to_text()
            return f"({text})" if isinstance(node, _Boolean) else text

        return f"{wrap(self.left)}{self.op}{wrap(self.right)}"

    def __eq__(self, other):
        return type(self) is type(other) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((type(self).__name__, self.left, self.right))


def _exact_periodic_form(node) -> tuple[frozenset[int], int, int] | None:
    """(residues, m, min_value) when node is exactly (R + mZ) cut at min_value."""
    if isinstance(node, Periodic):
        return node.residues, node.modulus, 0
    if isinstance(node, Shift):
        inner = _exact_periodic_form(node.inner)
        if inner is not None:
            r, m, minv = inner
            t = node.offset
            return frozenset((x + t) % m for x in r), m, max(0, minv + t)
    return None


def _intersect_all(factors) -> StructuredSet:
    node = factors[0]
    for f in factors[1:]:
        node = Intersect(node, f)
    return node


def _flatten_intersect(node, out: list) -> None:
    if isinstance(node, Intersect):
        _flatten_intersect(node.left, out)
        _flatten_intersect(node.right, out)
    else:
        out.append(node)


_PERIOD_LCM_MAX = 10**6


def _combine_periodic_forms(forms) -> tuple[frozenset[int], int, int]:
    residues, m, minv = forms[0]
    for r2, m2, minv2 in forms[1:]:
        m_new = math.lcm(m, m2)
        if m_new > _PERIOD_LCM_MAX:
            raise BudgetError("combined period exceeds the supported modulus")
        residues = frozenset(x for x in range(m_new)
                             if x % m in residues and x % m2 in r2)
        m = m_new
        minv = max(minv, minv2)
    return residues, m, minv


class Union(_Boolean):
    op = "|"

    def member(self, x: int) -> bool:
        return self.left.member(x) or self.right.member(x)

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        both = Intersect(self.left, self.right)
        return (self.left.count_in(lo, hi, budget) + self.right.count_in(lo, hi, budget)
                - both.count_in(lo, hi, budget))

    def periodic_profile(self):
        return _combine_profiles(self.left.periodic_profile(),
                                 self.right.periodic_profile(), "union")


class Intersect(_Boolean):
    op = "&"

    def member(self, x: int) -> bool:
        return self.left.member(x) and self.right.member(x)

    def _split_factors(self):
        """Flattened factors, split into (combined periodic form | None, rest).

        Union/Diff factors are distributed first so that counting can always
        reduce to periodic closed forms against materializable remainders.
        """
        factors: list = []
        _flatten_intersect(self, factors)
        for i, f in enumerate(factors):
            if isinstance(f, (Union, Diff)):
                rest = factors[:i] + factors[i + 1:]
                return None, (f, rest)
        forms = []
        others = []
        for f in factors:
            form = _exact_periodic_form(f)
            if form is not None:
                forms.append(form)
            else:
                others.append(f)
        combined = _combine_periodic_forms(forms) if forms else None
        return (combined, others), None

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        lo = max(lo, 0)
        if hi < lo:
            return 0
        split, distribute = self._split_factors()
        if distribute is not None:
            f, rest = distribute
            if isinstance(f, Union):
                a = _intersect_all([f.left] + rest).count_in(lo, hi, budget)
                b = _intersect_all([f.right] + rest).count_in(lo, hi, budget)
                ab = _intersect_all([f.left, f.right] + rest).count_in(lo, hi, budget)
                return a + b - ab
            a = _intersect_all([f.left] + rest).count_in(lo, hi, budget)
            ab = _intersect_all([f.left, f.right] + rest).count_in(lo, hi, budget)
            return a - ab
        (combined, others) = split
        if combined is not None:
            residues, m, minv = combined
            lo = max(lo, minv)
            if not residues or hi < lo:
                return 0
        if not others:
            return count_periodized(residues, m, lo, hi)
        U = None
        for f in others:
            V = f.intervals_in(lo, hi, budget)
            U = V if U is None else U.intersect(V)
        if combined is None:
            return U.count()
        return sum(count_periodized(residues, m, a, b) for a, b in U.intervals)

    def intervals_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> IntervalUnion:
        lo = max(lo, 0)
        if hi < lo:
            return IntervalUnion()
        split, distribute = self._split_factors()
        if distribute is not None:
            return _Boolean.intervals_in(self, lo, hi, budget)
        (combined, others) = split
        U = None
        for f in others:
            V = f.intervals_in(lo, hi, budget)
            U = V if U is None else U.intersect(V)
        if combined is None:
            return U if U is not None else IntervalUnion([(lo, hi)])
        residues, m, minv = combined
        lo = max(lo, minv)
        if not residues or hi < lo:
            return IntervalUnion()
        period = Periodic(residues, m)
        if U is None:
            return period.intervals_in(lo, hi, budget)
        pieces = []
        spent = 0
        for a, b in U.clip(lo, hi).intervals:
            piece = period.intervals_in(a, b, budget - spent)
            spent += len(piece.intervals)
            if spent > budget:
                raise BudgetError("intersection exceeds the interval budget")
            pieces.extend(piece.intervals)
        return IntervalUnion(pieces)

    def periodic_profile(self):
        p1 = self.left.periodic_profile()
        p2 = self.right.periodic_profile()
        if p1 == NO_CONSTRAINT:
            return p2
        if p2 == NO_CONSTRAINT:
            return p1
        return _combine_profiles(p1, p2, "intersect")


class Diff(_Boolean):
    op = "\\"

    def member(self, x: int) -> bool:
        return self.left.member(x) and not self.right.member(x)

    def count_in(self, lo: int, hi: int, budget: int = INTERVAL_BUDGET) -> int:
        both = Intersect(self.left, self.right)
        return self.left.count_in(lo, hi, budget) - both.count_in(lo, hi, budget)

    def periodic_profile(self):
        return self.left.periodic_profile()


def to_intervals(S: StructuredSet, lo: int, hi: int,
                 budget: int = INTERVAL_BUDGET) -> IntervalUnion:
    """Exact S intersect [lo, hi] as an IntervalUnion."""
    if hi >= VALUE_LIMIT:
        raise PreconditionError("window outside [0, 2^127)")
    return S.intervals_in(max(lo, 0), hi, budget)


# --- DSL parser ------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise DslSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise DslSyntaxError("expected a name", self.pos)
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start:self.pos]
        if not token or token in "+-":
            raise DslSyntaxError("expected an integer", start)
        return int(token)

    def fraction(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.expect("/")
            den = self.integer()
            if den == 0:
                raise DslSyntaxError("zero denominator", self.pos)
            return Fraction(num, den)
        return Fraction(num)

    def int_list(self, sep: str = ",") -> list[int]:
        out = [self.integer()]
        while self.peek() == sep:
            self.expect(sep)
            out.append(self.integer())
        return out


def _parse_schedule(sc: _Scanner) -> Schedule:
    name = sc.word()
    sc.expect("(")
    if name == "geom":
        base = sc.integer()
        sc.expect(",")
        count = sc.integer()
        sched = Schedule.geometric(base, count)
    elif name in ("superexp", "tower", "rec3"):
        count = sc.integer()
        sched = Schedule(name, (count,))
    elif name == "list":
        sched = Schedule.explicit(sc.int_list())
    else:
        raise DslSyntaxError(f"unknown schedule {name!r}", sc.pos)
    sc.expect(")")
    return sched


def _parse_term(sc: _Scanner) -> StructuredSet:
    if sc.peek() == "(":
        sc.expect("(")
        node = _parse_expr(sc)
        sc.expect(")")
        return node
    name = sc.word()
    sc.expect("(")
    if name == "periodic":
        residues = sc.int_list()
        sc.expect(";")
        modulus = sc.integer()
        node = Periodic(frozenset(residues), modulus)
    elif name == "blocks":
        sched = _parse_schedule(sc)
        sc.expect(",")
        p = sc.fraction()
        sc.expect(",")
        q = sc.fraction()
        node = Blocks(sched, p, q)
    elif name == "interval":
        a = sc.integer()
        sc.expect(",")
        b = sc.integer()
        node = Interval(a, b)
    elif name == "shift":
        inner = _parse_expr(sc)
        sc.expect(",")
        t = sc.integer()
        node = Shift(inner, t)
    else:
        raise DslSyntaxError(f"unknown set constructor {name!r}", sc.pos)
    sc.expect(")")
    return node


def _parse_expr(sc: _Scanner) -> StructuredSet:
    node = _parse_term(sc)
    while sc.peek() in {"|", "&", "\\"}:
        op = sc.peek()
        sc.expect(op)
        rhs = _parse_term(sc)
        node = {"|": Union, "&": Intersect, "\\": Diff}[op](node, rhs)
    return node


def parse_set(text: str) -> StructuredSet:
    """Parse the set DSL; raises DslSyntaxError with a position on failure."""
    sc = _Scanner(text)
    node = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise DslSyntaxError("trailing input", sc.pos)
    return node


def parse_schedule(text: str) -> Schedule:
    """Parse a schedule expression like "superexp(10)" or "list(10,100)"."""
    sc = _Scanner(text)
    sched = _parse_schedule(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise DslSyntaxError("trailing input", sc.pos)
    return sched


def structural_blocks(S: StructuredSet, limit: int | None = None) -> list[tuple[int, int]]:
    """(start, end) pairs of the block/interval pieces visible in the AST.

    These are the natural window boundaries for density scans of a scheduled
    set; periodic components contribute none.
    """
    out: set[tuple[int, int]] = set()

    def walk(node, offset: int):
        if isinstance(node, Blocks):
            for a, b in node.block_pairs():
                out.add((a + offset, b + offset))
        elif isinstance(node, Interval):
            out.add((node.a + offset, node.b + offset))
        elif isinstance(node, Shift):
            walk(node.inner, offset + node.offset)
        elif isinstance(node, _Boolean):
            walk(node.left, offset)
            walk(node.right, offset)

    walk(S, 0)
    pairs = sorted((a, b) for a, b in out if b >= 1)
    if limit is not None:
        pairs = [(a, b) for a, b in pairs if b <= limit]
    return pairs


def structural_breakpoints(S: StructuredSet, limit: int | None = None) -> list[int]:
    """Block/interval boundary values visible in the AST, sorted ascending."""
    points = {x for pair in structural_blocks(S) for x in pair if x >= 1}
    if limit is not None:
        points = {x for x in points if x <= limit}
    return sorted(points)
