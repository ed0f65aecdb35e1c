import pytest

from sumsetlab.errors import CapacityError
from sumsetlab.groups import make_group
from sumsetlab.sumsets import DenseSet, stabilizer, sumset
from sumsetlab.sweeps import (check_gap_bound, check_jin_analog,
                              check_push_analog, check_two_subgroups,
                              sweep_exhaustive, sweep_random)


def dense(G, xs):
    return DenseSet.from_indices(G, xs)


def test_check_examples_on_z6_pair():
    G = make_group([6])
    A, B = dense(G, [0, 1, 3, 4]), dense(G, [0, 3])
    assert check_jin_analog(A, B).status == "pass"
    assert check_push_analog(A, B).status == "pass"
    assert check_gap_bound(A, B).status == "pass"
    assert check_two_subgroups(sumset(A, B)).status == "pass"


def test_check_examples_on_z10_pair():
    G = make_group([10])
    A = dense(G, [0, 1])
    assert check_jin_analog(A, A).status == "pass"
    assert check_push_analog(A, A).status == "pass"
    assert check_gap_bound(A, A).status == "pass"


def test_checks_skip_non_deficient():
    G = make_group([6])
    A, B = dense(G, [0, 2]), dense(G, [0, 1])  # |A+B| = 4 = |A| + |B|
    assert check_jin_analog(A, B).status == "skip"
    assert check_push_analog(A, B).status == "skip"
    assert check_gap_bound(A, B).status == "pass"  # vacuous


def test_check_full_group_pair():
    G = make_group([5])
    full = DenseSet.full(G)
    assert check_jin_analog(full, full).status == "pass"
    assert check_push_analog(full, full).status == "pass"
    assert check_two_subgroups(full).status == "pass"


def test_two_subgroups_examples():
    G = make_group([6])
    C = dense(G, [0, 1, 3, 4])
    out = check_two_subgroups(C)
    assert out.status == "pass"
    assert stabilizer(C).elements == (0, 3)
    assert check_two_subgroups(dense(G, [2])).status == "pass"
    assert check_two_subgroups(DenseSet.full(G)).status == "pass"


def test_sweep_exhaustive_z6():
    stats = sweep_exhaustive(make_group([6]))
    assert stats.pairs_tested == 63 * 63 == 3969
    assert stats.total_violations() == 0
    assert sum(stats.stabilizer_histogram.values()) == stats.deficient_pairs
    assert stats.jin_min_slack is not None and stats.jin_min_slack >= 0


def test_sweep_exhaustive_klein_group():
    stats = sweep_exhaustive(make_group([2, 2]))
    assert stats.pairs_tested == 15 * 15 == 225
    assert stats.total_violations() == 0


def test_sweep_trivial_group():
    stats = sweep_exhaustive(make_group([1]))
    assert stats.pairs_tested == 1
    assert stats.total_violations() == 0


def test_sweep_workers_bit_identical():
    G = make_group([7])
    assert sweep_exhaustive(G, workers=1).to_record() == \
        sweep_exhaustive(G, workers=4).to_record()


def test_sweep_capacity_limits():
    with pytest.raises(CapacityError):
        sweep_exhaustive(make_group([11]))  # needs b_sample
    with pytest.raises(CapacityError):
        sweep_exhaustive(make_group([13]), b_sample=5)


def test_sweep_sampled_mode_orders_11_12():
    stats = sweep_exhaustive(make_group([11]), b_sample=3, seed=9)
    assert stats.pairs_tested == (2**11 - 1) * 3
    assert stats.total_violations() == 0
    again = sweep_exhaustive(make_group([11]), b_sample=3, seed=9, workers=2)
    assert again.to_record() == stats.to_record()


def test_gap_ge_two_forces_nontrivial_stabilizer():
    # histogram sanity: a deficient gap >= 2 needs |H| >= 2 (gap <= |H|)
    G = make_group([8])
    space = (1 << 8) - 1
    for a in range(1, space + 1, 7):
        for b in range(1, space + 1, 5):
            A, B = DenseSet(G, a), DenseSet(G, b)
            C = sumset(A, B)
            gap = A.card + B.card - C.card
            if gap >= 2:
                assert stabilizer(C).order >= 2


def test_sweep_random_reproducible():
    G = make_group([256])
    s1 = sweep_random(G, 200, seed=42)
    s2 = sweep_random(G, 200, seed=42)
    s3 = sweep_random(G, 200, seed=42, workers=3)
    assert s1.to_record() == s2.to_record() == s3.to_record()
    assert s1.total_violations() == 0
    assert s1.pairs_tested == 200


def test_sweep_random_zero_trials():
    stats = sweep_random(make_group([16]), 0, seed=1)
    assert stats.pairs_tested == 0
    assert stats.deficient_pairs == 0
    assert stats.total_violations() == 0


def test_sweep_random_different_seeds_differ():
    G = make_group([64])
    a = sweep_random(G, 100, seed=1)
    b = sweep_random(G, 100, seed=2)
    assert a.to_record() != b.to_record()


def test_record_excludes_wall_time():
    stats = sweep_exhaustive(make_group([5]))
    assert "elapsed" not in str(sorted(stats.to_record()))
    assert stats.elapsed_seconds > 0
