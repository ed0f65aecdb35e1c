"""One-shot reproductions of the three headline density constructions.

Each reproduction builds its sets and windows from fixed parameters, runs
the exact machinery, and returns a list of named checks with values and
bounds.  The CLI `examples` subcommand and the acceptance suite both call
these functions, so published numbers are regenerable by one command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .folner import DensityReport, intervals_prefix, lad_scan, suffix_prefix
from .refine import ZPairInstance, find_missing_element, refinement_search
from .symbolic import Blocks, Schedule

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Check:
    name: str
    value: str
    requirement: str
    ok: bool

    def to_record(self) -> dict:
        return {"name": self.name, "value": self.value,
                "requirement": self.requirement, "ok": self.ok}


@dataclass(frozen=True)
class Reproduction:
    name: str
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_record(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "checks": [c.to_record() for c in self.checks]}


def _within(value: Fraction, target: Fraction, tol: Fraction) -> bool:
    return abs(value - target) <= tol


def _report(counts_fn, prefix) -> DensityReport:
    sizes = prefix.sizes()
    return DensityReport.from_counts([counts_fn(t) for t in prefix.terms], sizes)


def half_blocks_reproduction(terms: int = 10, eps=Fraction(1, 50)) -> Reproduction:
    """Half-open blocks on a superexponential schedule: A = union [s_n/2, s_n].

    Along F_n = [1, s_n] the set and its double both have density 1/2, yet
    A+A+kZ fills everything for every k; restricting to the suffix windows
    [s_n/2, s_n] lifts d(A+A) to 1 and recovers the periodicity conclusion.
    """
    eps = Fraction(eps)
    sched = Schedule.superexp(terms)
    A = Blocks(sched, HALF, Fraction(1))
    F = intervals_prefix(sched)
    cap = sched.values()[-1]
    inst = ZPairInstance(A, A, 1, cap)
    rep_a = _report(inst.count_a, F)
    rep_ab = _report(inst.count_ab, F)
    checks = [
        Check("density(A) along F", str(rep_a.tail_min),
              "|tail-min - 1/2| <= 1/100", _within(rep_a.tail_min, HALF, Fraction(1, 100))),
        Check("density(A+A) along F", str(rep_ab.tail_min),
              "|tail-min - 1/2| <= 1/100", _within(rep_ab.tail_min, HALF, Fraction(1, 100))),
    ]
    for k in (1, 2, 3):
        sat = ZPairInstance(A, A, k, cap)
        rep_sat = _report(sat.count_ab_sat, F)
        exact_one = all(r == 1 for r in rep_sat.ratios)
        checks.append(Check(f"density(A+A+{k}Z) along F", str(rep_sat.tail_min),
                            "every term ratio = 1 exactly", exact_one))
    delta = rep_a.tail_min + rep_a.tail_min - rep_ab.tail_min
    result = refinement_search(A, A, F, 1, delta, eps)
    psi_ab_min = min(result.residuals.d_ab[len(F) - max(1, len(F) // 2):])
    gap_series = [a + b - c for a, b, c in zip(result.residuals.d_a,
                                               result.residuals.d_b,
                                               result.residuals.d_ab)]
    psi_gap_min = min(gap_series[len(F) - max(1, len(F) // 2):])
    checks.extend([
        Check("refinement family", result.family, "suffix:alpha=1/2 feasible",
              result.feasible and result.family == "suffix:alpha=1/2"),
        Check("density(A+A) along refined windows", str(psi_ab_min),
              ">= 49/50", psi_ab_min >= Fraction(49, 50)),
        Check("density gap along refined windows", str(psi_gap_min),
              ">= 24/25", psi_gap_min >= Fraction(24, 25)),
    ])
    return Reproduction("half-blocks", tuple(checks))


def tower_reproduction(terms: int = 5, witness_above: int = 10**6) -> Reproduction:
    """Doubling blocks at tower heights: A = union [s_n, 2 s_n], s_n = 2^(2^n).

    Along the blocks themselves all densities are 1, while A+A keeps missing
    elements of A+A+kZ arbitrarily late: periodization holds in density but
    cofiniteness fails, witnessed explicitly.
    """
    sched = Schedule.tower(terms)
    A = Blocks(sched, Fraction(1), Fraction(2))
    tops = [2 * s for s in sched.values()]
    F = suffix_prefix(Schedule.explicit(tops), HALF)
    cap = tops[-1]
    inst = ZPairInstance(A, A, 1, cap)
    rep_a = _report(inst.count_a, F)
    rep_ab = _report(inst.count_ab, F)
    bound = Fraction(99, 100)
    checks = [
        Check("density(A) along blocks", str(rep_a.tail_min), ">= 99/100",
              rep_a.tail_min >= bound),
        Check("density(B) along blocks", str(rep_a.tail_min), ">= 99/100",
              rep_a.tail_min >= bound),
        Check("density(A+B) along blocks", str(rep_ab.tail_min), ">= 99/100",
              rep_ab.tail_min >= bound),
    ]
    for k in (1, 2, 3):
        w = find_missing_element(A, A, k, witness_above, cap)
        ok = w is not None and w > witness_above
        if ok:
            # replay the witness: in the periodized sumset, not in the sumset
            sat = ZPairInstance(A, A, k, cap)
            ok = (sat.ap_ab.count_in(w, w) == 0
                  and (w % k) in sat.res_ab)
        checks.append(Check(f"cofiniteness failure witness, k={k}",
                            str(w), f"element of (A+B+{k}Z) \\ (A+B) above {witness_above}", ok))
    return Reproduction("tower-blocks", tuple(checks))


def rec3_reproduction(terms: int = 10) -> Reproduction:
    """Blocks [a_n, b_n] with a_{n+1} = 3 b_n and b_n = n^2 a_n.

    Along F_n = [1, b_n] every density tends to 1, while the classical
    prefix densities stay at 1/3 (for A) and 2/3 (for A+A): block windows
    and initial segments genuinely disagree.
    """
    sched = Schedule.rec3(terms)
    A = Blocks(sched, Fraction(1), Fraction(1))
    F = intervals_prefix(sched)
    N = sched.values()[-1]
    inst = ZPairInstance(A, A, 1, N)
    rep_a = _report(inst.count_a, F)
    u_a = inst.ap_a.to_interval_union()
    u_ab = inst.ap_ab.to_interval_union()
    tail_from = max(1, math.isqrt(N))
    lad_a = lad_scan(u_a, N, tail_from)
    lad_ab = lad_scan(u_ab, N, tail_from)
    tol = Fraction(1, 50)
    checks = [
        Check("density(A) along F", str(rep_a.tail_min), ">= 49/50",
              rep_a.tail_min >= Fraction(49, 50)),
        Check("lower density of A", str(lad_a.tail_min),
              "|value - 1/3| <= 1/50", _within(lad_a.tail_min, Fraction(1, 3), tol)),
        Check("lower density of A+A", str(lad_ab.tail_min),
              "|value - 2/3| <= 1/50", _within(lad_ab.tail_min, Fraction(2, 3), tol)),
    ]
    return Reproduction("rec3-blocks", tuple(checks))


REPRODUCTIONS = {
    "half-blocks": half_blocks_reproduction,
    "tower": tower_reproduction,
    "rec3": rec3_reproduction,
    # historical alias for the half-blocks construction
    "remark-folner": half_blocks_reproduction,
}
