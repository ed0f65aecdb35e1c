#!/usr/bin/env python3
"""Walkthrough: sumsets, stabilizers, and addition-theorem certificates.

A pair (A, B) in a finite abelian group is *deficient* when
|A+B| < |A| + |B|.  Deficiency forces structure: the sumset is a union of
cosets of its stabilizer H, and the sizes satisfy an exact identity.  This
script works one example end to end, then shows the stabilizer reduction.
"""

from sumsetlab import (DenseSet, kj_reduce, kneser_certificate, make_group,
                       quotient, quotient_image, stabilizer, subgroup_of, sumset)

G = make_group([6])
A = DenseSet.from_indices(G, [0, 1, 3, 4])
B = DenseSet.from_indices(G, [0, 3])
C = sumset(A, B)

print(f"group       Z_{G.order}")
print(f"A           {{{A.literal()}}}   |A| = {A.card}")
print(f"B           {{{B.literal()}}}   |B| = {B.card}")
print(f"A+B         {{{C.literal()}}}   |A+B| = {C.card}  (deficient: {C.card} < {A.card + B.card})")

H = stabilizer(C)
print(f"stabilizer  H(A+B) = {{{','.join(map(str, H.elements))}}}")

cert = kneser_certificate(A, B)
print(f"identity    |A+B| = |A+H| + |B+H| - |H|:  "
      f"{cert.card_sum} = {cert.card_a_h} + {cert.card_b_h} - {cert.card_h}")
print(f"gap         |A| + |B| - |A+B| = {cert.gap}  (never exceeds min(|A|, |B|, |H|))")

# The certificate survives passage to the quotient by H: the projected pair
# is deficient in Z_6 / H and its stabilizer is trivial there.
Q = quotient(G, H)
print(f"\nquotient    order {Q.order}")
print(f"image of A  {quotient_image(A, Q).indices()}")
print(f"image of C  {quotient_image(C, Q).indices()}")

# Stabilizer reduction: starting from any subgroup K0 that leaves |A+B|
# unchanged, the stabilizer of A+B+K0 contains K0 and satisfies the same
# identity.  Here K0 = H already, so the reduction returns H itself.
K = kj_reduce(A, B, subgroup_of(G, [0, 3]))
print(f"\nkj_reduce   K = {{{','.join(map(str, K.elements))}}}, index {K.index}")

# Full-group pairs are the degenerate extreme: deficient, stabilized by
# everything, with the identity collapsing to n = n + n - n.
full = DenseSet.full(G)
cert = kneser_certificate(full, full)
print(f"\nfull pair   |A+B| = {cert.card_sum}, |H| = {cert.card_h}, "
      f"equation holds: {cert.equation_holds}")
