#!/usr/bin/env python3
"""Walkthrough: the set DSL, schedules, and exact interval arithmetic.

Symbolic sets describe infinite subsets of N without enumeration; counting
and windowed materialization are exact at any magnitude (bounds live below
2^127).  Sumsets of truncated sets are exact below the truncation cap
because larger elements cannot contribute to smaller sums.
"""

from sumsetlab import (IntervalUnion, Schedule, iu_sumset, parse_set,
                       to_intervals)

# The DSL: periodic classes, scheduled blocks, intervals, shifts, booleans.
evens = parse_set("periodic(0;2)")
half_blocks = parse_set("blocks(superexp(10),1/2,1)")
mixed = parse_set("periodic(0;2)&blocks(superexp(10),1/2,1)")

print("evens on [0,12]:      ", to_intervals(evens, 0, 12).to_pairs())
print("half-blocks on [0,70]:", to_intervals(half_blocks, 0, 70).to_pairs())

# Schedules generate block bounds.  superexp grows like 2^(n(n+1)/2), so the
# tenth block already ends at 2^55; counting there is still exact.
sched = Schedule.superexp(10)
print("\nsuperexp(10) values:", [f"2^{v.bit_length()-1}" for v in sched.values()])
top = sched.values()[-1]
print(f"|half-blocks  on [1, 2^55]| = {half_blocks.count_in(1, top)}")
print(f"|evens-in-blocks on [1, 2^55]| = {mixed.count_in(1, top)}")

# The rec3 recursion carries genuine (a_n, b_n) pairs: each block is n^2
# times longer than its start, and consecutive blocks are a factor 3 apart.
rec = Schedule.rec3(6)
print("\nrec3 pairs:", rec.pairs())

# Interval-union arithmetic is the exact backbone: sumsets of unions are
# normalized unions of pairwise interval sums.
U = IntervalUnion([(2, 4), (8, 16)])
print("\nU          :", U.to_pairs())
print("U+U cap 40 :", iu_sumset(U, U, 40).to_pairs())

# Tower blocks make the point about scale: the fifth block ends at 2^33.
tower = parse_set("blocks(tower(5),1,2)")
print("\ntower blocks:", [(f"2^{a.bit_length()-1}", f"2^{b.bit_length()-1}")
                          for a, b in to_intervals(tower, 0, 1 << 34).to_pairs()])
