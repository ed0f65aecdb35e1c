from fractions import Fraction

import pytest
from sumsetlab.errors import BudgetError, CapacityError, DslSyntaxError
from sumsetlab.symbolic import (Blocks, Interval, Periodic, Schedule, Shift,
                                parse_schedule, parse_set,
                                structural_breakpoints, to_intervals)

# -- schedules ----------------------------------------------------------------


def test_geometric_schedule():
    assert Schedule.geometric(4, 3).values() == [4, 16, 64]


def test_superexp_ratios_and_size():
    s = Schedule.superexp(10).values()
    assert s[-1] == 1 << 55
    for n in range(1, 10):
        assert s[n] == s[n - 1] * (1 << (n + 1))


def test_tower_values():
    vals = Schedule.tower(5).values()
    assert vals == [4, 16, 256, 65536, 1 << 32]


def test_rec3_recursion():
    pairs = Schedule.rec3(10).pairs()
    assert pairs[0] == (1, 1)
    for n, (a, b) in enumerate(pairs, start=1):
        assert b == n * n * a
    for (a1, b1), (a2, _) in zip(pairs, pairs[1:]):
        assert a2 == 3 * b1


def test_schedule_capacity_limits():
    with pytest.raises(CapacityError):
        Schedule.tower(7).pairs()
    with pytest.raises(CapacityError):
        Schedule.superexp(16).pairs()
    Schedule.superexp(15).pairs()  # largest admissible


def test_explicit_schedule_must_increase():
    with pytest.raises(Exception):
        Schedule.explicit([5, 5]).pairs()


# -- parsing -------------------------------------------------------------------


def test_parse_examples():
    evens = parse_set("periodic(0;2)")
    assert isinstance(evens, Periodic) and evens.modulus == 2

    half = parse_set("blocks(superexp(8),1/2,1)")
    assert isinstance(half, Blocks)
    assert half.p == Fraction(1, 2) and half.q == 1

    tower = parse_set("blocks(tower(5),1,2)")
    assert tower.block_pairs()[-1] == (1 << 32, 1 << 33)


def test_parse_compound_and_whitespace():
    S = parse_set("  periodic( 0 ; 2 ) & ( blocks(geom(4,3),1/2,1) | interval(0, 5) )  ")
    assert S.member(2) and not S.member(1)


def test_parse_errors_carry_position():
    with pytest.raises(DslSyntaxError) as err:
        parse_set("periodic(0;2) | blorp(3)")
    assert err.value.position > 10
    with pytest.raises(DslSyntaxError):
        parse_set("interval(1,2) trailing")
    with pytest.raises(DslSyntaxError):
        parse_set("blocks(superexp(8),1/0,1)")


def test_parse_schedule_text():
    assert parse_schedule("list(10,100,1000)").values() == [10, 100, 1000]
    with pytest.raises(DslSyntaxError):
        parse_schedule("geom(4)")


# -- AST semantics ---------------------------------------------------------------

CORPUS = [
    "periodic(0;2)",
    "periodic(1,3;5)",
    "interval(3,40)",
    "blocks(geom(3,5),1/2,1)",
    "blocks(list(7,29,120,500),1/3,2/3)",
    "shift(periodic(0;3),4)",
    "shift(blocks(geom(4,4),1,2),-5)",
    "periodic(0;2)&blocks(geom(3,5),1/2,1)",
    "periodic(0;2)|periodic(1;3)",
    "blocks(geom(3,5),1/2,1)\\periodic(0;4)",
    "(periodic(0;2)|interval(10,20))&blocks(list(15,90,400),1/2,1)",
    "shift((periodic(1;2)&interval(0,300))|interval(5,8),3)",
]


@pytest.mark.parametrize("text", CORPUS)
def test_membership_agrees_with_materialization(text):
    S = parse_set(text)
    for lo, hi in ((0, 700), (97, 1203)):
        U = to_intervals(S, lo, hi)
        members = set(U.elements())
        for x in range(lo, hi + 1):
            assert S.member(x) == (x in members), (text, x)


@pytest.mark.parametrize("text", CORPUS)
def test_count_agrees_with_materialization(text):
    S = parse_set(text)
    for lo, hi in ((0, 700), (11, 58), (250, 1100)):
        assert S.count_in(lo, hi) == to_intervals(S, lo, hi).count()


@pytest.mark.parametrize("text", CORPUS)
def test_roundtrip_through_text(text):
    S = parse_set(text)
    assert parse_set(S.to_text()) == S


def test_structural_count_at_huge_scale():
    # evens inside geometric blocks, checked against a closed form:
    # block [s/2, s] holds floor(s/2) - ceil(ceil(s/2)/2)·... enumerate small
    S = parse_set("periodic(0;2)&blocks(geom(4,5),1/2,1)")
    small = to_intervals(S, 0, 1 << 12).count()
    assert S.count_in(0, 1 << 12) == small
    # same structural path at a scale where materialization is impossible
    big = parse_set("periodic(0;2)&blocks(superexp(10),1/2,1)")
    total = big.count_in(0, 1 << 55)
    # evens in [ceil(s/2), s] for s = 2^(n(n+1)/2): exactly s/4 + 1 of them
    expected = sum((1 << (n * (n + 1) // 2 - 2)) + 1 for n in range(2, 11)) + 1
    assert total == expected


def test_half_blocks_closed_form_count():
    # |blocks(superexp(10),1/2,1) intersect [1, s_10]| = sum of s_n/2 + 1
    S = parse_set("blocks(superexp(10),1/2,1)")
    sched = Schedule.superexp(10)
    expected = sum(s - (s + 1) // 2 + 1 for s in sched.values())
    assert S.count_in(1, sched.values()[-1]) == expected
    # bit-vector cross-check at a small scale
    small = parse_set("blocks(superexp(5),1/2,1)")
    top = Schedule.superexp(5).values()[-1]
    members = [x for x in range(top + 1) if small.member(x)]
    assert small.count_in(0, top) == len(members)


def test_materialization_budget_error():
    evens = parse_set("periodic(0;2)")
    with pytest.raises(BudgetError):
        to_intervals(evens, 0, 10**8)
    assert evens.count_in(0, 10**8) == 10**8 // 2 + 1


def test_shift_clips_into_naturals():
    S = Shift(Interval(0, 10), -5)
    assert S.member(0) and S.member(5) and not S.member(6)
    assert S.count_in(0, 100) == 6
    T = Shift(Periodic(frozenset({0}), 4), 2)
    assert [x for x in range(20) if T.member(x)] == [2, 6, 10, 14, 18]


def test_negative_shift_of_periodic_keeps_low_hits():
    # shifting down re-exposes small elements: (4Z + 0) - 3 = {1, 5, 9, ...}
    T = Shift(Periodic(frozenset({0}), 4), -3)
    assert [x for x in range(12) if T.member(x)] == [1, 5, 9]
    assert T.count_in(0, 11) == 3


def test_structural_breakpoints():
    S = parse_set("periodic(0;2)&blocks(list(10,100),1/2,1)")
    assert structural_breakpoints(S) == [5, 10, 50, 100]
    assert structural_breakpoints(S, limit=60) == [5, 10, 50]
    assert structural_breakpoints(parse_set("periodic(0;2)")) == []


def test_blocks_validation():
    with pytest.raises(Exception):
        Blocks(Schedule.geometric(2, 3), Fraction(2), Fraction(1))
