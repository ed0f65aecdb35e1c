#!/usr/bin/env python3
"""Walkthrough: the refinement search and its independent checker.

Given a pair with a positive density gap delta along a prefix F, the search
looks for refined windows Psi_n inside F_n satisfying three conclusions:

  (1) tail-min |Psi_n| / |F_n|  >=  k * delta
  (2) the sumset and its k-periodization agree along Psi
  (3) the density gap along Psi is still >= delta

The candidate families are suffix windows, coset filters, and (for boxes)
corner sub-boxes; the search is deterministic and a separate checker
re-evaluates whatever it returns.
"""

from fractions import Fraction

from sumsetlab import (Schedule, intervals_prefix, parse_set,
                       refinement_search, ubd_pipeline, verify_folner_theorem)

# The half-blocks set: density 1/2 along [1, s_n], but its doubled set fails
# periodization there (d(A+A) = 1/2 while d(A+A+kZ) = 1 for every k).
A = parse_set("blocks(superexp(10),1/2,1)")
F = intervals_prefix(Schedule.superexp(10))
delta = Fraction(1, 2)

full = verify_folner_theorem(A, A, F, F, 1, delta, Fraction(1, 50))
print(f"Psi = F fails: r2 = {float(full.r2):.3f} (periodization residual)")

result = refinement_search(A, A, F, 1, delta, Fraction(1, 50))
print(f"search: {result.family}, feasible = {result.feasible}, "
      f"candidates tried = {result.candidates_tried}")
print(f"  r1 = {float(result.residuals.r1):+.4f}  "
      f"r2 = {float(result.residuals.r2):+.6f}  "
      f"r3 = {float(result.residuals.r3):+.4f}")
check = verify_folner_theorem(A, A, F, result.psi, 1, delta, Fraction(1, 50))
print(f"independent checker passes: {check.passes}")

# Residue-class unions refine through coset filters: for the evens the full
# filter R = {0,1} keeps everything and the periodization residual is 0
# exactly.
evens = parse_set("periodic(0;2)")
Fe = intervals_prefix(Schedule.explicit([100, 1000, 10000]))
res = refinement_search(evens, evens, Fe, 2, Fraction(1, 2), Fraction(1, 50))
print(f"\nevens: {res.family}, feasible = {res.feasible}, r2 = {res.residuals.r2}")

# The upper-density pipeline chains everything: estimates, delta, the
# stabilizer index from the periodic component, search, checker.
mixed = parse_set("periodic(0;2)&blocks(superexp(8),1/2,1)")
rep = ubd_pipeline(mixed, Schedule.superexp(8).values()[-1])
print(f"\npipeline on evens-in-blocks: d(A) ~ {float(rep.estimate_a):.4f}, "
      f"delta = {float(rep.delta):.4f}, k = {rep.k} ({rep.k_source})")
print(f"  refinement: {rep.refinement.family}, feasible = {rep.refinement.feasible}, "
      f"checker passes: {rep.checker_passes}")
