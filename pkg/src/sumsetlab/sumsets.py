"""Subset algebra in finite abelian groups: sumsets, stabilizers, certificates.

Sets are DenseSet wrappers around a Python int bitset.  The naive sumset
translates one indicator by every element of the other set; the FFT path
computes the same support via multidimensional cyclic convolution and is
byte-identical to the naive path (the convolution values are integers in
[0, |G|], and for |G| <= 2^20 the float64 FFT roundoff is below 1e-8, far
under the 0.5 threshold used to read off the support).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CheckFailure, PreconditionError
from .groups import FiniteGroup, QuotientGroup, Subgroup, bit_indices, subgroup_closure

FFT_MAX_ORDER = 1 << 20


class DenseSet:
    """A subset of a finite group (FiniteGroup or QuotientGroup) as a bitset."""

    __slots__ = ("group", "bits", "card")

    def __init__(self, group, bits: int):
        if bits < 0 or bits >> group.order:
            raise PreconditionError("bitset has bits outside the group")
        self.group = group
        self.bits = bits
        self.card = bits.bit_count()

    @classmethod
    def from_indices(cls, group, indices) -> "DenseSet":
        bits = 0
        for x in indices:
            if not 0 <= x < group.order:
                raise PreconditionError(f"element index {x} out of range")
            bits |= 1 << x
        return cls(group, bits)

    @classmethod
    def full(cls, group) -> "DenseSet":
        return cls(group, (1 << group.order) - 1)

    def indices(self) -> list[int]:
        return bit_indices(self.bits)

    def measure(self) -> Fraction:
        """Normalized counting measure |C| / |G|."""
        return Fraction(self.card, self.group.order)

    def translate(self, g: int) -> "DenseSet":
        return DenseSet(self.group, self.group.translate_bits(self.bits, g))

    def union(self, other: "DenseSet") -> "DenseSet":
        _same_group(self, other)
        return DenseSet(self.group, self.bits | other.bits)

    def intersect(self, other: "DenseSet") -> "DenseSet":
        _same_group(self, other)
        return DenseSet(self.group, self.bits & other.bits)

    def contains(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def literal(self) -> str:
        return ",".join(str(x) for x in self.indices())

    def __eq__(self, other):
        return isinstance(other, DenseSet) and self.group == other.group and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.group), self.bits))

    def __repr__(self):
        return f"DenseSet({{{self.literal()}}} in {getattr(self.group, 'spec', '?')})"


def _same_group(A: DenseSet, B: DenseSet) -> None:
    if A.group is not B.group and A.group != B.group:
        raise PreconditionError("sets live in different groups")


def sumset(A: DenseSet, B: DenseSet) -> DenseSet:
    """Exact {a + b : a in A, b in B}; empty if either set is empty."""
    _same_group(A, B)
    G = A.group
    if A.card == 0 or B.card == 0:
        return DenseSet(G, 0)
    small, big = (A, B) if A.card <= B.card else (B, A)
    out = 0
    for a in bit_indices(small.bits):
        out |= G.translate_bits(big.bits, a)
    return DenseSet(G, out)


def sumset_fft(A: DenseSet, B: DenseSet) -> DenseSet:
    """Sumset via cyclic convolution of indicators; identical to sumset()."""
    _same_group(A, B)
    G = A.group
    if not isinstance(G, FiniteGroup):
        raise PreconditionError("FFT sumsets require a FiniteGroup (product of cyclics)")
    if G.order > FFT_MAX_ORDER:
        raise PreconditionError(f"FFT sumsets capped at order {FFT_MAX_ORDER}")
    if A.card == 0 or B.card == 0:
        return DenseSet(G, 0)
    shape = tuple(reversed(G.moduli))
    fa = np.zeros(G.order)
    fa[A.indices()] = 1.0
    fb = np.zeros(G.order)
    fb[B.indices()] = 1.0
    conv = np.fft.ifftn(np.fft.fftn(fa.reshape(shape)) * np.fft.fftn(fb.reshape(shape))).real
    support = np.flatnonzero(conv.reshape(-1) > 0.5)
    bits = 0
    for x in support.tolist():
        bits |= 1 << x
    return DenseSet(G, bits)


def stabilizer(C: DenseSet) -> Subgroup:
    """H(C) = {g : C + g = C}, computed by testing every translate."""
    if C.card == 0:
        raise PreconditionError("stabilizer of the empty set is rejected")
    G = C.group
    elems = [g for g in G.elements() if G.translate_bits(C.bits, g) == C.bits]
    return Subgroup(G, tuple(elems))


def periodize(C: DenseSet, K: Subgroup) -> DenseSet:
    """C + K via translates of C by the subgroup elements."""
    G = C.group
    out = 0
    for k in K.elements:
        out |= G.translate_bits(C.bits, k)
    return DenseSet(G, out)


def is_periodic(C: DenseSet, K: Subgroup) -> bool:
    """True iff C + K = C."""
    return periodize(C, K).bits == C.bits


@dataclass(frozen=True)
class KneserCertificate:
    """All numeric facts the addition theorem asserts about one pair."""

    card_a: int
    card_b: int
    card_sum: int
    deficient: bool
    stab: Subgroup
    card_a_h: int
    card_b_h: int
    card_h: int
    equation_holds: bool
    period_holds: bool
    gap: int

    def to_record(self) -> dict:
        return {
            "card_a": self.card_a,
            "card_b": self.card_b,
            "card_sum": self.card_sum,
            "deficient": self.deficient,
            "stabilizer": list(self.stab.elements),
            "card_a_h": self.card_a_h,
            "card_b_h": self.card_b_h,
            "card_h": self.card_h,
            "equation_holds": self.equation_holds,
            "period_holds": self.period_holds,
            "gap": self.gap,
        }


def kneser_certificate(A: DenseSet, B: DenseSet, strict: bool = True) -> KneserCertificate:
    """Certificate for the pair (A, B): |A+B| = |A+H| + |B+H| - |H| when deficient.

    With strict=True a deficient pair whose equation fails raises
    CheckFailure; this cannot happen unless the implementation is broken,
    since it is exactly the addition theorem for finite abelian groups.
    """
    _same_group(A, B)
    if A.card == 0 or B.card == 0:
        raise PreconditionError("certificate requires nonempty sets")
    C = sumset(A, B)
    H = stabilizer(C)
    AH = periodize(A, H)
    BH = periodize(B, H)
    deficient = C.card < A.card + B.card
    equation = C.card == AH.card + BH.card - H.order
    period = is_periodic(C, H)
    cert = KneserCertificate(
        card_a=A.card, card_b=B.card, card_sum=C.card,
        deficient=deficient, stab=H,
        card_a_h=AH.card, card_b_h=BH.card, card_h=H.order,
        equation_holds=equation, period_holds=period,
        gap=A.card + B.card - C.card,
    )
    if strict and deficient and not equation:
        raise CheckFailure(
            "Kneser equation failed on a deficient pair",
            witness={"group": getattr(A.group, "spec", "?"), "a": A.literal(), "b": B.literal()},
        )
    return cert


def kj_reduce(A: DenseSet, B: DenseSet, K0: Subgroup) -> Subgroup:
    """Stabilizer reduction: K = H(A+B+K0) for a deficient, K0-stable pair.

    Requires |A+B| < |A| + |B| and |A+B+K0| = |A+B|.  The result satisfies
    K >= K0, A+B+K0 = A+B+K, and |A+B| = |A+K| + |B+K| - |K|; the last
    identity is asserted.
    """
    _same_group(A, B)
    if A.card == 0 or B.card == 0:
        raise PreconditionError("kj_reduce requires nonempty sets")
    C = sumset(A, B)
    if not C.card < A.card + B.card:
        raise PreconditionError("kj_reduce precondition failed: pair is not deficient (|A+B| >= |A|+|B|)")
    CK0 = periodize(C, K0)
    if CK0.card != C.card:
        raise PreconditionError("kj_reduce precondition failed: |A+B+K0| != |A+B|")
    K = stabilizer(CK0)
    if any(not K.contains(k) for k in K0.elements):
        raise CheckFailure("kj_reduce postcondition K >= K0 failed")
    AK = periodize(A, K)
    BK = periodize(B, K)
    if C.card != AK.card + BK.card - K.order:
        raise CheckFailure(
            "kj_reduce equation |A+B| = |A+K| + |B+K| - |K| failed",
            witness={"a": A.literal(), "b": B.literal(), "k0": list(K0.elements)},
        )
    return K


def quotient_image(C: DenseSet, q: QuotientGroup) -> DenseSet:
    """Image of C under the projection onto the quotient."""
    bits = 0
    for x in C.indices():
        bits |= 1 << q.project(x)
    return DenseSet(q, bits)


def subgroup_of(group, indices) -> Subgroup:
    """Validated subgroup from explicit element indices."""
    S = Subgroup(group, tuple(sorted(set(indices))))
    S.validate()
    return S


def subgroup_generated(group, gens) -> Subgroup:
    return subgroup_closure(group, gens)
