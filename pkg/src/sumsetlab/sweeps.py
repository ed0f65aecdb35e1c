"""Exhaustive and randomized sweeps of the finite-group lemma analogs.

Every nonempty pair (A, B) in a small group is pushed through four checks:

* kneser_equation: deficient pairs satisfy |A+B| = |A+H| + |B+H| - |H| with
  H = H(A+B), and A+B+H = A+B;
* jin_analog: for each H-coset meeting A, |A cap coset| + |A+B| >= |A| + |B|;
* push_analog: A+g <= A+B implies g in B+H;
* gap_bound: |A| + |B| - |A+B| <= min(|A|, |B|, |H|);
* two_subgroups: exactly one subgroup S satisfies S = H(A+B+S) with
  |A+B+S| = |A+B|.

A violation would disprove a theorem (or expose a bug), so sweeps must come
back with zero violations; witnesses carry enough to replay a single pair.
Sweeps shard the pair space by the integer encoding of A and merge
order-free, so reports are bit-identical for any worker count, and the
randomized mode is a pure function of (seed, counter).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import CapacityError, PreconditionError
from .groups import FiniteGroup, Subgroup, bit_indices, enumerate_subgroups
from .rng import nonzero_bits
from .sumsets import DenseSet, periodize, stabilizer, sumset

EXHAUSTIVE_MAX_FULL = 10
EXHAUSTIVE_MAX_SAMPLED = 12
RANDOM_MAX_ORDER = 1 << 16
CHECK_NAMES = ("kneser_equation", "jin_analog", "push_analog", "gap_bound", "two_subgroups")


@dataclass(frozen=True)
class CheckOutcome:
    status: str  # "pass" | "skip" | "fail"
    witness: Optional[dict] = None


def _witness(group, a_bits: int, b_bits: int, **extra) -> dict:
    w = {
        "group": group.spec,
        "a": ",".join(map(str, bit_indices(a_bits))),
        "b": ",".join(map(str, bit_indices(b_bits))),
    }
    w.update(extra)
    return w


def check_jin_analog(A: DenseSet, B: DenseSet) -> CheckOutcome:
    """Coset mass inequality for deficient pairs; skip otherwise."""
    C = sumset(A, B)
    if C.card >= A.card + B.card:
        return CheckOutcome("skip")
    H = stabilizer(C)
    G = A.group
    need = A.card + B.card - C.card
    seen = 0
    for g in G.elements():
        coset = G.translate_bits(H.mask, g)
        if seen & coset:
            continue
        seen |= coset
        inter = (A.bits & coset).bit_count()
        # tautology guard on the coset plumbing: nonempty iff positive count
        assert (inter > 0) == bool(A.bits & coset)
        if inter == 0:
            continue
        if inter < need:
            return CheckOutcome("fail", _witness(
                G, A.bits, B.bits, check="jin_analog",
                coset=",".join(map(str, bit_indices(coset))), coset_mass=inter))
    return CheckOutcome("pass")


def check_push_analog(A: DenseSet, B: DenseSet) -> CheckOutcome:
    """A+g <= A+B forces g in B+H(A+B); deficient pairs only."""
    C = sumset(A, B)
    if C.card >= A.card + B.card:
        return CheckOutcome("skip")
    G = A.group
    H = stabilizer(C)
    BH = periodize(B, H)
    not_c = ~C.bits
    for g in G.elements():
        if G.translate_bits(A.bits, g) & not_c:
            continue
        if not BH.contains(g):
            return CheckOutcome("fail", _witness(
                G, A.bits, B.bits, check="push_analog", g=g))
    return CheckOutcome("pass")


def check_gap_bound(A: DenseSet, B: DenseSet) -> CheckOutcome:
    """|A| + |B| - |A+B| <= min(|A|, |B|, |H(A+B)|)."""
    C = sumset(A, B)
    H = stabilizer(C)
    gap = A.card + B.card - C.card
    if gap > min(A.card, B.card, H.order):
        return CheckOutcome("fail", _witness(
            A.group, A.bits, B.bits, check="gap_bound", gap=gap, h_order=H.order))
    return CheckOutcome("pass")


def check_two_subgroups(C: DenseSet, subgroups: Optional[list[Subgroup]] = None) -> CheckOutcome:
    """Exactly one subgroup S has S = H(C+S) and |C+S| = |C+H(C)| (= |C|)."""
    if C.card == 0:
        raise PreconditionError("two-subgroup check needs a nonempty set")
    G = C.group
    if subgroups is None:
        subgroups = enumerate_subgroups(G)
    found = []
    for S in subgroups:
        CS = periodize(C, S)
        if CS.card != C.card:
            continue
        if stabilizer(CS).mask == S.mask:
            found.append(S)
    if len(found) != 1:
        return CheckOutcome("fail", {
            "group": G.spec, "c": C.literal(), "check": "two_subgroups",
            "candidates": [list(S.elements) for S in found]})
    return CheckOutcome("pass")


@dataclass
class SweepStats:
    """Aggregated sweep outcome; canonical record excludes wall time."""

    group_spec: str
    mode: str
    pairs_tested: int = 0
    deficient_pairs: int = 0
    violations: dict = field(default_factory=lambda: {name: [] for name in CHECK_NAMES})
    stabilizer_histogram: dict = field(default_factory=dict)
    jin_min_slack: Optional[int] = None
    trials: Optional[int] = None
    seed: Optional[int] = None
    elapsed_seconds: float = 0.0

    def total_violations(self) -> int:
        return sum(len(v) for v in self.violations.values())

    def merge(self, other: "SweepStats") -> None:
        self.pairs_tested += other.pairs_tested
        self.deficient_pairs += other.deficient_pairs
        for name in CHECK_NAMES:
            self.violations[name].extend(other.violations[name])
        for key, cnt in other.stabilizer_histogram.items():
            self.stabilizer_histogram[key] = self.stabilizer_histogram.get(key, 0) + cnt
        if other.jin_min_slack is not None:
            if self.jin_min_slack is None or other.jin_min_slack < self.jin_min_slack:
                self.jin_min_slack = other.jin_min_slack

    def canonicalize(self) -> None:
        for name in CHECK_NAMES:
            self.violations[name].sort(key=lambda w: (w.get("a", ""), w.get("b", "")))

    def to_record(self) -> dict:
        return {
            "group": self.group_spec,
            "mode": self.mode,
            "pairs_tested": self.pairs_tested,
            "deficient_pairs": self.deficient_pairs,
            "violations": {name: list(v) for name, v in sorted(self.violations.items())},
            "stabilizer_histogram": {str(k): self.stabilizer_histogram[k]
                                     for k in sorted(self.stabilizer_histogram)},
            "jin_min_slack": self.jin_min_slack,
            "trials": self.trials,
            "seed": self.seed,
        }


class _Context:
    """Per-group memoization shared by every pair of a sweep."""

    def __init__(self, G: FiniteGroup, mask_table: bool):
        self.G = G
        n = G.order
        self.n = n
        self.full = (1 << n) - 1
        self.table = None
        if mask_table:
            if n > EXHAUSTIVE_MAX_SAMPLED:
                raise CapacityError("mask table only built for sweep-size groups")
            self.table = [[G.translate_bits(mask, g) for mask in range(1 << n)]
                          for g in range(n)]
        self._stab: dict[int, tuple[int, tuple[int, ...]]] = {}
        self._per: dict[tuple[int, int], int] = {}
        self._two: dict[int, CheckOutcome] = {}
        try:
            self.subgroups = enumerate_subgroups(G)
        except CapacityError:
            # two_subgroups is skipped above the enumeration cap
            self.subgroups = None

    def translate(self, bits: int, g: int) -> int:
        if self.table is not None:
            return self.table[g][bits]
        return self.G.translate_bits(bits, g)

    def sum_bits(self, a_bits: int, b_bits: int) -> int:
        small, big = (a_bits, b_bits) if a_bits.bit_count() <= b_bits.bit_count() else (b_bits, a_bits)
        out = 0
        while small:
            low = small & -small
            out |= self.translate(big, low.bit_length() - 1)
            small ^= low
        return out

    def stab(self, c_bits: int) -> tuple[int, tuple[int, ...]]:
        cached = self._stab.get(c_bits)
        if cached is None:
            elems = tuple(g for g in range(self.n) if self.translate(c_bits, g) == c_bits)
            mask = 0
            for g in elems:
                mask |= 1 << g
            cached = (mask, elems)
            self._stab[c_bits] = cached
        return cached

    def periodized(self, x_bits: int, h_elems: tuple[int, ...], h_mask: int) -> int:
        key = (x_bits, h_mask)
        cached = self._per.get(key)
        if cached is None:
            cached = 0
            for h in h_elems:
                cached |= self.translate(x_bits, h)
            self._per[key] = cached
        return cached

    def two_subgroups(self, c_bits: int) -> CheckOutcome:
        if self.subgroups is None:
            return CheckOutcome("skip")
        cached = self._two.get(c_bits)
        if cached is None:
            c_card = c_bits.bit_count()
            found = []
            for S in self.subgroups:
                cs = self.periodized(c_bits, S.elements, S.mask)
                if cs.bit_count() != c_card:
                    continue
                if self.stab(cs)[0] == S.mask:
                    found.append(S)
            if len(found) == 1:
                cached = CheckOutcome("pass")
            else:
                cached = CheckOutcome("fail", {
                    "group": self.G.spec,
                    "c": ",".join(map(str, bit_indices(c_bits))),
                    "check": "two_subgroups",
                    "candidates": [list(S.elements) for S in found]})
            self._two[c_bits] = cached
        return cached


def _scan(ctx: _Context, stats: SweepStats, pairs) -> None:
    """Run every check over an iterable of (a_bits, b_bits)."""
    G = ctx.G
    n = ctx.n
    for a_bits, b_bits in pairs:
        stats.pairs_tested += 1
        c_bits = ctx.sum_bits(a_bits, b_bits)
        pa, pb, pc = a_bits.bit_count(), b_bits.bit_count(), c_bits.bit_count()
        h_mask, h_elems = ctx.stab(c_bits)
        h_order = len(h_elems)
        gap = pa + pb - pc
        if gap > min(pa, pb, h_order):
            stats.violations["gap_bound"].append(_witness(
                G, a_bits, b_bits, check="gap_bound", gap=gap, h_order=h_order))
        deficient = pc < pa + pb
        if deficient:
            stats.deficient_pairs += 1
            stats.stabilizer_histogram[h_order] = stats.stabilizer_histogram.get(h_order, 0) + 1
            ah = ctx.periodized(a_bits, h_elems, h_mask)
            bh = ctx.periodized(b_bits, h_elems, h_mask)
            ch = ctx.periodized(c_bits, h_elems, h_mask)
            if pc != ah.bit_count() + bh.bit_count() - h_order or ch != c_bits:
                stats.violations["kneser_equation"].append(_witness(
                    G, a_bits, b_bits, check="kneser_equation"))
            # jin analog over H-cosets meeting A
            seen = 0
            for g in range(n):
                if seen >> g & 1:
                    continue
                coset = ctx.translate(h_mask, g)
                seen |= coset
                inter = (a_bits & coset).bit_count()
                if inter == 0:
                    continue
                slack = inter + pc - pa - pb
                if stats.jin_min_slack is None or slack < stats.jin_min_slack:
                    stats.jin_min_slack = slack
                if slack < 0:
                    stats.violations["jin_analog"].append(_witness(
                        G, a_bits, b_bits, check="jin_analog",
                        coset=",".join(map(str, bit_indices(coset)))))
            # push analog
            not_c = ctx.full & ~c_bits
            for g in range(n):
                if ctx.translate(a_bits, g) & not_c:
                    continue
                if not bh >> g & 1:
                    stats.violations["push_analog"].append(_witness(
                        G, a_bits, b_bits, check="push_analog", g=g))
            two = ctx.two_subgroups(c_bits)
            if two.status == "fail":
                stats.violations["two_subgroups"].append(dict(two.witness))


def _run_shards(G: FiniteGroup, mode: str, shard_pairs, workers: int,
                mask_table: bool) -> SweepStats:
    ctx = _Context(G, mask_table=mask_table)
    t0 = time.perf_counter()
    shards = []
    for shard_id in range(max(1, workers)):
        shards.append(SweepStats(G.spec, mode))
    if workers <= 1:
        for shard_id, stats in enumerate(shards):
            _scan(ctx, stats, shard_pairs(shard_id, len(shards)))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_scan, ctx, stats, shard_pairs(i, len(shards)))
                       for i, stats in enumerate(shards)]
            for f in futures:
                f.result()
    total = SweepStats(G.spec, mode)
    for stats in shards:
        total.merge(stats)
    total.canonicalize()
    total.elapsed_seconds = time.perf_counter() - t0
    return total


def sweep_exhaustive(G: FiniteGroup, workers: int = 1,
                     b_sample: Optional[int] = None, seed: int = 0) -> SweepStats:
    """Every nonempty pair (full pair space needs |G| <= 10).

    For |G| in (10, 12] a b_sample size must be given; each A is then paired
    with that many seeded random nonempty B.
    """
    n = G.order
    if n > EXHAUSTIVE_MAX_SAMPLED:
        raise CapacityError(f"exhaustive sweeps capped at order {EXHAUSTIVE_MAX_SAMPLED}")
    if n > EXHAUSTIVE_MAX_FULL and b_sample is None:
        raise CapacityError(
            f"full pair space capped at order {EXHAUSTIVE_MAX_FULL}; pass b_sample")
    space = (1 << n) - 1

    if b_sample is None:
        def shard_pairs(shard_id: int, nshards: int):
            for a_bits in range(1 + shard_id, space + 1, nshards):
                for b_bits in range(1, space + 1):
                    yield a_bits, b_bits
    else:
        def shard_pairs(shard_id: int, nshards: int):
            for a_bits in range(1 + shard_id, space + 1, nshards):
                counter = a_bits * (4 * ((n + 63) // 64) + 8)
                for _ in range(b_sample):
                    b_bits, counter = nonzero_bits(seed, counter, n)
                    yield a_bits, b_bits

    stats = _run_shards(G, "exhaustive", shard_pairs, workers, mask_table=True)
    if b_sample is not None:
        stats.trials = b_sample
        stats.seed = seed
    return stats


def sweep_random(G: FiniteGroup, trials: int, seed: int, workers: int = 1) -> SweepStats:
    """Seeded uniform random nonempty pairs; identical stats for any worker count."""
    if G.order > RANDOM_MAX_ORDER:
        raise CapacityError(f"random sweeps capped at order {RANDOM_MAX_ORDER}")
    if trials < 0:
        raise PreconditionError("trials must be >= 0")
    words = (G.order + 63) // 64
    stride = 4 * words + 16

    def shard_pairs(shard_id: int, nshards: int):
        for trial in range(shard_id, trials, nshards):
            counter = trial * stride
            a_bits, counter = nonzero_bits(seed, counter, G.order)
            b_bits, counter = nonzero_bits(seed, counter, G.order)
            yield a_bits, b_bits

    stats = _run_shards(G, "random", shard_pairs, workers,
                        mask_table=G.order <= EXHAUSTIVE_MAX_SAMPLED)
    stats.trials = trials
    stats.seed = seed
    return stats
