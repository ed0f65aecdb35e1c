from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumsetlab.boxes import Box
from sumsetlab.errors import BudgetError, PreconditionError
from sumsetlab.folner import (FilteredTerm, boxes_prefix,
                              coset_filter_prefix, count_in_term, defect_report,
                              density, explicit_prefix, intervals_prefix,
                              lad_scan, parse_prefix, suffix_prefix,
                              symmetric_boxes_prefix, tail_slice, term_contains,
                              term_size, ubd_estimate, ubd_window_search)
from sumsetlab.intervals import IntervalUnion
from sumsetlab.symbolic import Schedule, parse_set


def test_make_prefix_examples():
    P = intervals_prefix(Schedule.explicit([10, 100, 1000]))
    assert [t.to_pairs() for t in P.terms] == [[[1, 10]], [[1, 100]], [[1, 1000]]]

    psi = suffix_prefix(Schedule.superexp(8), Fraction(1, 2))
    s8 = Schedule.superexp(8).values()[-1]
    assert psi.terms[-1].to_pairs() == [[s8 // 2, s8]]

    sym = symmetric_boxes_prefix(2, Schedule.explicit([5, 10]))
    assert sym.terms[0] == Box((-5, -5), (5, 5))
    assert sym.terms[1].size() == 21 * 21

    with pytest.raises(PreconditionError):
        suffix_prefix(Schedule.explicit([10]), Fraction(3, 2))


def test_parse_prefix_specs():
    assert len(parse_prefix("intervals:superexp(10)")) == 10
    p = parse_prefix("suffix:superexp(10):1/2")
    assert p.terms[0].to_pairs() == [[1, 2]]
    b = parse_prefix("boxes:2:list(5,10,20)")
    assert b.terms[0] == Box((1, 1), (5, 5))
    with pytest.raises(PreconditionError):
        parse_prefix("spiral:7")


def test_term_size_and_containment():
    U = IntervalUnion([(1, 100)])
    assert term_size(U) == 100
    ft = FilteredTerm(U, frozenset({0}), 2)
    assert term_size(ft) == 50
    assert term_contains(U, ft.base)
    assert term_contains(U, U.clip(5, 60))
    assert not term_contains(U.clip(5, 60), U)
    assert term_contains(Box((0, 0), (9, 9)), Box((1, 1), (5, 5)))


def test_defect_examples():
    P = intervals_prefix(Schedule.explicit([100]))
    rep = defect_report(P, [1, 0, -3])
    assert rep.ratios[0][0] == Fraction(2, 100)
    assert rep.ratios[0][1] == 0
    assert rep.ratios[0][2] == Fraction(6, 100)

    boxes = explicit_prefix([Box((1, 1), (10, 10))], "box")
    rep = defect_report(boxes, [(1, 0), (0, 0)])
    assert rep.ratios[0][0] == Fraction(1, 5)
    assert rep.ratios[0][1] == 0


def test_defect_on_filtered_terms_matches_enumeration():
    base = IntervalUnion([(10, 49)])
    term = FilteredTerm(base, frozenset({0, 1}), 3)
    members = {x for x in range(10, 50) if x % 3 in (0, 1)}
    P = explicit_prefix([term], "filtered")
    for t in (1, 2, -2, 3):
        shifted = {x + t for x in members}
        expected = Fraction(len(members ^ shifted), len(members))
        rep = defect_report(P, [t])
        assert rep.ratios[0][0] == expected


def test_density_of_evens_along_intervals():
    evens = parse_set("periodic(0;2)")
    P = intervals_prefix(Schedule.explicit([10, 100, 1000, 10000]))
    rep = density(evens, P)
    for ratio, size in zip(rep.ratios, rep.term_sizes):
        assert abs(ratio - Fraction(1, 2)) <= Fraction(1, size)


def test_density_tail_slice():
    assert tail_slice(10) == 5
    assert tail_slice(5) == 3
    assert tail_slice(1) == 0


def test_density_monotone_and_subadditive():
    A = parse_set("periodic(0;4)")
    B = parse_set("periodic(0;2)")  # A subset of B
    AB = parse_set("periodic(0;4)|periodic(0;2)")
    P = intervals_prefix(Schedule.explicit([13, 57, 301]))
    ra, rb, rab = density(A, P), density(B, P), density(AB, P)
    for x, y, z in zip(ra.ratios, rb.ratios, rab.ratios):
        assert x <= y
        assert z <= x + y


def test_translation_control_inequality():
    # | |A cap F| - |(A+t) cap F| | / |F| <= defect(F, -t)
    A = parse_set("blocks(list(8,20,50,120),1/2,1)")
    P = intervals_prefix(Schedule.explicit([30, 80, 200]))
    U = A.intervals_in(0, 300)
    for t in (1, 2, 5, -3):
        defects = defect_report(P, [-t]).ratios
        shifted = U.shift(t)
        for term, row in zip(P.terms, defects):
            a, b = term.intervals[0]
            diff = abs(U.count_in(a, b) - shifted.count_in(a, b))
            assert Fraction(diff, term.count()) <= row[0]


def test_coset_union_density_converges():
    # unions of residue classes have density |R|/k within |R|/|F_n| per term
    S = parse_set("periodic(0,2;6)")
    P = intervals_prefix(Schedule.explicit([10, 100, 1000]))
    rep = density(S, P)
    for ratio, size in zip(rep.ratios, rep.term_sizes):
        assert abs(ratio - Fraction(2, 6)) <= Fraction(2, size)
    single = density(parse_set("periodic(3;7)"), P)
    for ratio, size in zip(single.ratios, single.term_sizes):
        assert abs(ratio - Fraction(1, 7)) <= Fraction(1, size)


def test_density_against_filtered_terms():
    S = parse_set("periodic(0;2)")
    F = intervals_prefix(Schedule.explicit([40, 200]))
    Psi = coset_filter_prefix(F, {0}, 2)
    rep = density(S, Psi)
    assert all(r == 1 for r in rep.ratios)
    odd = density(parse_set("periodic(1;2)"), Psi)
    assert all(r == 0 for r in odd.ratios)


def test_count_in_term_interval_union_input():
    U = IntervalUnion([(0, 9), (20, 29)])
    term = IntervalUnion([(5, 24)])
    assert count_in_term(U, term) == 10
    ft = FilteredTerm(IntervalUnion([(0, 29)]), frozenset({0}), 10)
    assert count_in_term(U, ft) == 2  # 0 and 20


# -- lad scan -------------------------------------------------------------------


def brute_lad(U: IntervalUnion, N: int, start: int = 1):
    best, best_at = None, None
    count = 0
    members = set(U.elements())
    for n in range(1, N + 1):
        if n in members:
            count += 1
        if n >= start:
            r = Fraction(count, n)
            if best is None or r < best:
                best, best_at = r, n
    return best, best_at


@given(st.lists(st.tuples(st.integers(1, 400), st.integers(0, 40)), min_size=1, max_size=5),
       st.integers(50, 500))
def test_lad_scan_matches_brute_force(blocks, N):
    U = IntervalUnion([(a, a + w) for a, w in blocks]).clip(1, N)
    if U.is_empty():
        return
    rep = lad_scan(U, N, tail_from=1)
    expected, _ = brute_lad(U, N)
    assert rep.global_min == expected
    assert rep.tail_min == expected
    mid = max(1, N // 3)
    rep2 = lad_scan(U, N, tail_from=mid)
    expected2, _ = brute_lad(U, N, start=mid)
    assert rep2.tail_min == expected2


def test_lad_scan_evens_degenerate_head():
    rep = lad_scan(parse_set("periodic(0;2)"), 10**4, tail_from=100)
    assert rep.global_min == 0 and rep.global_argmin == 1
    assert rep.tail_min == Fraction(50, 101)


def test_lad_scan_rejects_bad_limits():
    with pytest.raises(PreconditionError):
        lad_scan(IntervalUnion([(1, 5)]), 0)


# -- upper density -----------------------------------------------------------------


def test_ubd_estimate_evens():
    evens = parse_set("periodic(0;2)")
    candidates = [intervals_prefix(Schedule.explicit([100, 1000])),
                  suffix_prefix(Schedule.explicit([100, 1000]), Fraction(1, 2))]
    rep = ubd_estimate(evens, candidates)
    assert abs(rep.estimate - Fraction(1, 2)) < Fraction(1, 50)


def test_ubd_window_search_finds_block():
    S = parse_set("interval(1,1000)")
    res = ubd_window_search(S, 10**6, min_len=100)
    assert res.ratio == 1
    assert res.window == (1, 1000)

    half = parse_set("blocks(list(64,4096),1/2,1)")
    res = ubd_window_search(half, 4096, min_len=10)
    assert res.ratio == 1  # a suffix block is itself a window

    with pytest.raises(BudgetError):
        ubd_window_search(parse_set("periodic(0;2)"), 10**5)


def test_density_along_boxes_with_predicate():
    # coordinate-sum parity over growing boxes converges to 1/2
    P = boxes_prefix(2, Schedule.explicit([5, 10, 20]))

    def even_sum(x, y):
        return (x + y) % 2 == 0

    rep = density(even_sum, P)
    for ratio, size in zip(rep.ratios, rep.term_sizes):
        assert abs(ratio - Fraction(1, 2)) <= Fraction(1, size) + Fraction(1, 100)


def test_density_along_boxes_with_periodic_set():
    from sumsetlab.boxes import PeriodicBoxSet
    from sumsetlab.lattices import Sublattice

    S = PeriodicBoxSet(Sublattice(((2, 0), (0, 2))), [(0, 0)])
    P = symmetric_boxes_prefix(2, Schedule.explicit([4, 8]))
    rep = density(S, P)
    assert rep.ratios[0] == Fraction(25, 81)
    assert rep.ratios[1] == Fraction(81, 289)


def test_filtered_term_defect_stays_in_range():
    P = coset_filter_prefix(intervals_prefix(Schedule.explicit([60, 600])), {1}, 4)
    rep = defect_report(P, [1, 4, -4])
    for row in rep.ratios:
        for r in row:
            assert 0 <= r <= 2
    # shifting by the modulus moves the window but keeps the residues
    assert rep.ratios[1][1] < Fraction(1, 10)
