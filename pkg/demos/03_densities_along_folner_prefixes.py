#!/usr/bin/env python3
"""Walkthrough: densities along Folner prefixes, defects, and the lad scan.

A Folner prefix is a finite truncation of a Folner sequence: windows whose
translation defect |F ^ (F+t)| / |F| shrinks.  Densities along a prefix are
exact rationals per term; liminf/limsup are reported as tail min/max with a
convergence flag, never as a pretended limit.
"""

from fractions import Fraction

from sumsetlab import (Schedule, defect_report, density, intervals_prefix,
                       lad_scan, parse_set, suffix_prefix, ubd_estimate)

evens = parse_set("periodic(0;2)")
F = intervals_prefix(Schedule.explicit([10, 100, 1000, 10000]))

print("defects of [1,100] under shifts 1, 5, -3:")
print("  ", [str(r) for r in defect_report(F, [1, 5, -3]).ratios[1]])

rep = density(evens, F)
print("\nevens along [1,10^j]:", [str(r) for r in rep.ratios])
print("tail estimates:", rep.tail_min, "..", rep.tail_max, "converged:", rep.converged)

# The rec3 set: dense along its own blocks, sparse along initial segments.
A = parse_set("blocks(rec3(10),1,1)")
blocks = intervals_prefix(Schedule.rec3(10))
rep = density(A, blocks)
print("\nrec3 set along [1, b_n] (last 3 terms):",
      [f"{float(r):.4f}" for r in rep.ratios[-3:]])

N = Schedule.rec3(10).values()[-1]
scan = lad_scan(A, N)
print(f"lad scan to b_10 ~ 2.6e17: global min {scan.global_min} at n={scan.global_argmin},")
print(f"  tail-restricted min {float(scan.tail_min):.4f} at n={scan.tail_argmin}")
print("  (the classical prefix density sits at 1/3 while block windows see ~1)")

# Upper density estimates compare candidate prefixes; suffix windows see the
# half-blocks set at density 1 where initial segments see 1/2.
half = parse_set("blocks(superexp(10),1/2,1)")
sched = Schedule.superexp(10)
est = ubd_estimate(half, [intervals_prefix(sched), suffix_prefix(sched, Fraction(1, 2))])
print(f"\nupper-density estimate for half-blocks: {est.estimate} via {est.best_label}")
