"""Finite Folner prefixes, defect reports, and exact densities along them.

A FolnerPrefix is a finite list of window terms.  A term is one of:

* an IntervalUnion (a 1-D window, usually one interval),
* a FilteredTerm: window intersected with residue classes R + kZ, kept
  symbolic so coset-filtered windows over astronomically large ranges
  still count exactly without materialization,
* a Box in Z^d.

Densities are exact rationals per term.  liminf/limsup of the underlying
infinite sequence are reported honestly as min/max over a tail of the
computed terms (default: the last half), together with a convergence flag;
nothing pretends to be a limit.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .boxes import Box, PeriodicBoxSet, box_defect, count_predicate
from .errors import BudgetError, PreconditionError
from .intervals import IntervalUnion, count_periodized
from .symbolic import Intersect, Periodic, Schedule, StructuredSet, parse_schedule, to_intervals


@dataclass(frozen=True)
class FilteredTerm:
    """base window intersected with (residues + modulus*Z), kept symbolic."""

    base: IntervalUnion
    residues: frozenset[int]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "residues",
                           frozenset(r % self.modulus for r in self.residues))
        if not self.residues:
            raise PreconditionError("filtered term needs at least one residue")

    def size(self) -> int:
        return sum(count_periodized(self.residues, self.modulus, a, b)
                   for a, b in self.base.intervals)


def term_size(term) -> int:
    if isinstance(term, IntervalUnion):
        return term.count()
    if isinstance(term, FilteredTerm):
        return term.size()
    if isinstance(term, Box):
        return term.size()
    raise PreconditionError(f"unknown term type {type(term).__name__}")


def term_contains(outer, inner) -> bool:
    """Setwise containment inner <= outer for same-shape terms."""
    if isinstance(outer, IntervalUnion):
        if isinstance(inner, IntervalUnion):
            return inner.diff(outer).is_empty()
        if isinstance(inner, FilteredTerm):
            return inner.base.diff(outer).is_empty()
    if isinstance(outer, FilteredTerm) and isinstance(inner, FilteredTerm):
        return (inner.base.diff(outer.base).is_empty()
                and inner.modulus == outer.modulus
                and inner.residues <= outer.residues)
    if isinstance(outer, Box) and isinstance(inner, Box):
        return outer.contains_box(inner)
    return False


@dataclass(frozen=True)
class FolnerPrefix:
    """A finite truncation of a Folner sequence."""

    terms: tuple
    label: str

    def __post_init__(self):
        if not self.terms:
            raise PreconditionError("prefix needs at least one term")
        for t in self.terms:
            if term_size(t) <= 0:
                raise PreconditionError("every prefix term must be nonempty")

    def __len__(self):
        return len(self.terms)

    def sizes(self) -> list[int]:
        return [term_size(t) for t in self.terms]


def intervals_prefix(schedule: Schedule) -> FolnerPrefix:
    """F_n = [1, s_n]."""
    terms = tuple(IntervalUnion.single(1, s) for s in schedule.values())
    return FolnerPrefix(terms, f"intervals:{schedule.to_text()}")


def suffix_prefix(schedule: Schedule, alpha: Fraction) -> FolnerPrefix:
    """Psi_n = [ceil(alpha * s_n), s_n] for alpha in (0, 1)."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise PreconditionError("suffix windows need alpha in (0, 1)")
    terms = []
    for s in schedule.values():
        lo = -((-alpha.numerator * s) // alpha.denominator)
        terms.append(IntervalUnion.single(min(lo, s), s))
    return FolnerPrefix(tuple(terms), f"suffix:{schedule.to_text()}:{alpha}")


def boxes_prefix(dim: int, schedule: Schedule) -> FolnerPrefix:
    """Boxes [1, s_n]^d."""
    terms = tuple(Box((1,) * dim, (s,) * dim) for s in schedule.values())
    return FolnerPrefix(terms, f"boxes:{dim}:{schedule.to_text()}")


def symmetric_boxes_prefix(dim: int, schedule: Schedule) -> FolnerPrefix:
    """Boxes [-s_n, s_n]^d."""
    terms = tuple(Box((-s,) * dim, (s,) * dim) for s in schedule.values())
    return FolnerPrefix(terms, f"symmetric-boxes:{dim}:{schedule.to_text()}")


def explicit_prefix(terms, label: str = "explicit") -> FolnerPrefix:
    return FolnerPrefix(tuple(terms), label)


def coset_filter_prefix(base: FolnerPrefix, residues, k: int) -> FolnerPrefix:
    """Psi_n = F_n intersect (R + kZ); 1-D terms only."""
    out = []
    for t in base.terms:
        if isinstance(t, IntervalUnion):
            out.append(FilteredTerm(t, frozenset(residues), k))
        elif isinstance(t, FilteredTerm):
            if t.modulus != k:
                raise PreconditionError("cannot stack coset filters with different moduli")
            out.append(FilteredTerm(t.base, frozenset(residues) & t.residues, k))
        else:
            raise PreconditionError("coset filters apply to 1-D windows")
    rtxt = ",".join(map(str, sorted(set(r % k for r in residues))))
    return FolnerPrefix(tuple(out), f"coset-filter({base.label};R={{{rtxt}}} mod {k})")


def parse_prefix(spec: str) -> FolnerPrefix:
    """Parse "intervals:superexp(10)", "suffix:superexp(10):1/2",
    "boxes:2:list(5,10)", or "symmetric-boxes:2:list(5,10)"."""
    parts = spec.split(":")
    kind = parts[0]
    if kind == "intervals" and len(parts) == 2:
        return intervals_prefix(parse_schedule(parts[1]))
    if kind == "suffix" and len(parts) == 3:
        return suffix_prefix(parse_schedule(parts[1]), Fraction(parts[2]))
    if kind in ("boxes", "symmetric-boxes") and len(parts) == 3:
        dim = int(parts[1])
        sched = parse_schedule(parts[2])
        return boxes_prefix(dim, sched) if kind == "boxes" else symmetric_boxes_prefix(dim, sched)
    raise PreconditionError(f"bad prefix spec {spec!r}")


# --- counting a set against a term ------------------------------------------


def count_in_term(S, term) -> int:
    """Exact |S intersect term|."""
    if isinstance(term, IntervalUnion):
        if isinstance(S, IntervalUnion):
            return sum(S.count_in(a, b) for a, b in term.intervals)
        if isinstance(S, StructuredSet):
            return sum(S.count_in(a, b) for a, b in term.intervals)
    elif isinstance(term, FilteredTerm):
        if isinstance(S, IntervalUnion):
            total = 0
            for a, b in term.base.intervals:
                for c, d in S.clip(a, b).intervals:
                    total += count_periodized(term.residues, term.modulus, c, d)
            return total
        if isinstance(S, StructuredSet):
            filt = Intersect(S, Periodic(term.residues, term.modulus))
            return sum(filt.count_in(a, b) for a, b in term.base.intervals)
    elif isinstance(term, Box):
        if isinstance(S, PeriodicBoxSet):
            return S.count_in(term)
        if callable(S):
            return count_predicate(S, term)
    raise PreconditionError(
        f"cannot count {type(S).__name__} against a {type(term).__name__} term")


# --- density reports ---------------------------------------------------------


def tail_slice(n_terms: int) -> int:
    """First index of the tail window: the last half of the terms."""
    return max(0, n_terms - max(1, n_terms // 2))


@dataclass(frozen=True)
class DensityReport:
    """Per-term densities plus honest tail estimates of liminf/limsup."""

    term_sizes: tuple[int, ...]
    counts: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    tail_min: Fraction
    tail_max: Fraction
    converged: bool
    tol: Fraction

    @property
    def liminf_estimate(self) -> Fraction:
        return self.tail_min

    @property
    def limsup_estimate(self) -> Fraction:
        return self.tail_max

    @classmethod
    def from_counts(cls, counts, sizes, tol=Fraction(1, 100)) -> "DensityReport":
        ratios = tuple(Fraction(c, s) for c, s in zip(counts, sizes))
        start = tail_slice(len(ratios))
        tail = ratios[start:]
        tmin, tmax = min(tail), max(tail)
        return cls(tuple(sizes), tuple(counts), ratios, tmin, tmax,
                   tmax - tmin <= tol, Fraction(tol))

    def to_record(self) -> dict:
        return {
            "ratios": [str(r) for r in self.ratios],
            "ratios_decimal": [float(r) for r in self.ratios],
            "term_sizes": [str(s) for s in self.term_sizes],
            "counts": [str(c) for c in self.counts],
            "tail_min": str(self.tail_min),
            "tail_max": str(self.tail_max),
            "liminf_estimate": float(self.tail_min),
            "limsup_estimate": float(self.tail_max),
            "converged": self.converged,
            "tol": str(self.tol),
        }


def density(S, prefix: FolnerPrefix, tol=Fraction(1, 100)) -> DensityReport:
    """Exact per-term density of S along the prefix, with tail estimates.

    S may be a StructuredSet, a materialized IntervalUnion (the caller must
    have materialized it past the last window), a PeriodicBoxSet, or a
    vectorized predicate for box terms.
    """
    sizes = prefix.sizes()
    counts = [count_in_term(S, t) for t in prefix.terms]
    return DensityReport.from_counts(counts, sizes, tol)


@dataclass(frozen=True)
class DefectReport:
    """Per-term, per-shift symmetric-difference ratios |F ^ (F+t)| / |F|."""

    shifts: tuple
    ratios: tuple[tuple[Fraction, ...], ...]  # [term][shift]

    def max_ratio(self) -> Fraction:
        return max(max(row) for row in self.ratios)

    def to_record(self) -> dict:
        return {
            "shifts": [list(s) if isinstance(s, tuple) else s for s in self.shifts],
            "ratios": [[str(r) for r in row] for row in self.ratios],
            "ratios_decimal": [[float(r) for r in row] for row in self.ratios],
        }


def _interval_symdiff_count(U: IntervalUnion, t: int) -> int:
    """|U symdiff (U + t)| computed in Z (no clipping at 0)."""
    lift = 0
    if t < 0:
        lift = -t
    shifted_up = U.shift(lift)  # exact: min(U) + lift >= 0
    moved = shifted_up.shift(t)
    return shifted_up.symmetric_diff(moved).count()


def _filtered_symdiff_count(term: FilteredTerm, t: int) -> int:
    """|Psi symdiff (Psi + t)| for a coset-filtered window, exact, in Z."""
    k = term.modulus
    lift = k * ((max(0, -t) + k - 1) // k)  # multiple of k, so residues are unchanged
    base = term.base.shift(lift)
    moved_base = base.shift(t)
    r1 = term.residues
    r2 = frozenset((r + t) % k for r in r1)
    inter_base = base.intersect(moved_base)
    both = r1 & r2
    size = sum(count_periodized(r1, k, a, b) for a, b in base.intervals)
    inter = sum(count_periodized(both, k, a, b) for a, b in inter_base.intervals)
    return 2 * size - 2 * inter


def defect_report(prefix: FolnerPrefix, shifts) -> DefectReport:
    """Exact Folner defects of every term against every shift."""
    rows = []
    for term in prefix.terms:
        size = term_size(term)
        row = []
        for t in shifts:
            if isinstance(term, Box):
                num, den = box_defect(term, t)
                row.append(Fraction(num, den))
            elif isinstance(term, IntervalUnion):
                row.append(Fraction(_interval_symdiff_count(term, t), size))
            else:
                row.append(Fraction(_filtered_symdiff_count(term, t), size))
        rows.append(tuple(row))
    return DefectReport(tuple(shifts), tuple(rows))


# --- lower asymptotic density scan -------------------------------------------


@dataclass(frozen=True)
class LadReport:
    """Exact minimum of |S intersect [1,n]| / n over n <= N.

    The running ratio increases inside S and decreases along gaps, so its
    minima occur exactly at n = (interval start) - 1 and at n = N; the scan
    checks those breakpoints only.  The global minimum is usually degenerate
    at tiny n, so a tail-restricted minimum (n >= tail_from) is also reported.
    """

    limit: int
    tail_from: int
    global_min: Fraction
    global_argmin: int
    tail_min: Fraction
    tail_argmin: int
    final_ratio: Fraction

    def to_record(self) -> dict:
        return {
            "limit": str(self.limit),
            "tail_from": str(self.tail_from),
            "global_min": str(self.global_min),
            "global_min_decimal": float(self.global_min),
            "global_argmin": str(self.global_argmin),
            "tail_min": str(self.tail_min),
            "tail_min_decimal": float(self.tail_min),
            "tail_argmin": str(self.tail_argmin),
            "final_ratio": str(self.final_ratio),
        }


def lad_scan(S, N: int, tail_from: int | None = None,
             budget: int | None = None) -> LadReport:
    """Breakpoint scan of the lower-asymptotic-density prefix ratios."""
    if N < 1:
        raise PreconditionError("scan limit must be >= 1")
    if isinstance(S, IntervalUnion):
        U = S.clip(1, N)
    else:
        U = to_intervals(S, 1, N) if budget is None else S.intervals_in(1, N, budget)
    if tail_from is None:
        tail_from = max(1, math.isqrt(N))
    if not 1 <= tail_from <= N:
        raise PreconditionError("tail_from must be in [1, N]")

    starts = [a for a, _ in U.intervals]
    ends = [b for _, b in U.intervals]
    cums = []
    c = 0
    for a, b in U.intervals:
        c += b - a + 1
        cums.append(c)

    def count_upto(n: int) -> int:
        i = bisect_right(ends, n)
        total = cums[i - 1] if i else 0
        if i < len(starts) and starts[i] <= n:
            total += n - starts[i] + 1
        return total

    candidates = {N, tail_from}
    candidates.add(1)
    for a in starts:
        if a - 1 >= 1:
            candidates.add(a - 1)

    global_min = None
    global_at = None
    tail_min = None
    tail_at = None
    for n in sorted(candidates):
        if n > N:
            continue
        r = Fraction(count_upto(n), n)
        if global_min is None or r < global_min:
            global_min, global_at = r, n
        if n >= tail_from and (tail_min is None or r < tail_min):
            tail_min, tail_at = r, n
    return LadReport(N, tail_from, global_min, global_at, tail_min, tail_at,
                     Fraction(count_upto(N), N))


# --- upper-density estimation -------------------------------------------------


@dataclass(frozen=True)
class UbdReport:
    """Best upper-density estimate over candidate prefixes."""

    best_label: str
    estimate: Fraction
    per_candidate: tuple[tuple[str, Fraction], ...]

    def to_record(self) -> dict:
        return {
            "best_label": self.best_label,
            "estimate": str(self.estimate),
            "estimate_decimal": float(self.estimate),
            "per_candidate": [[lbl, str(v)] for lbl, v in self.per_candidate],
        }


def ubd_estimate(S, candidates, tol=Fraction(1, 100)) -> UbdReport:
    """Max limsup estimate of the density of S over the candidate prefixes."""
    if not candidates:
        raise PreconditionError("ubd_estimate needs at least one candidate prefix")
    rows = []
    for prefix in candidates:
        rep = density(S, prefix, tol)
        rows.append((prefix.label, rep.limsup_estimate))
    best_label, best = max(rows, key=lambda r: (r[1],))
    return UbdReport(best_label, best, tuple(rows))


@dataclass(frozen=True)
class WindowSearchResult:
    window: tuple[int, int]
    ratio: Fraction

    def to_record(self) -> dict:
        return {
            "window": [str(self.window[0]), str(self.window[1])],
            "ratio": str(self.ratio),
            "ratio_decimal": float(self.ratio),
        }


def ubd_window_search(S, N: int, min_len: int = 1,
                      max_breakpoints: int = 1000) -> WindowSearchResult:
    """Best-density window [l, r] <= [1, N] with endpoints at breakpoints.

    Breakpoints are the interval endpoints of S intersect [1, N] plus 1 and
    N.  Only block-structured sets (few intervals) are searchable this way;
    a set with more than max_breakpoints intervals raises BudgetError
    (periodic sets should use candidate prefixes instead).
    """
    if isinstance(S, IntervalUnion):
        U = S.clip(1, N)
    else:
        U = to_intervals(S, 1, N, budget=max_breakpoints)
    if U.is_empty():
        raise PreconditionError("set is empty on [1, N]")
    if len(U.intervals) > max_breakpoints:
        raise BudgetError("too many intervals for window search; use candidate prefixes")
    points = sorted({1, N} | {a for a, _ in U.intervals} | {b for _, b in U.intervals})
    best = None  # (count, length, l, r)
    for i, l in enumerate(points):
        for r in points[i:]:
            length = r - l + 1
            if length < min_len:
                continue
            c = U.count_in(l, r)
            if best is None or c * best[1] > best[0] * length:
                best = (c, length, l, r)
    return WindowSearchResult((best[2], best[3]), Fraction(best[0], best[1]))
