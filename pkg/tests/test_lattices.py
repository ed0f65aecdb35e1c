from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumsetlab.errors import PreconditionError
from sumsetlab.lattices import (Sublattice, enumerate_sublattices, hnf_reduce,
                                lattice_quotient, reduce_mod_lattice)


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def brute_sublattices(n):
    """Oracle: HNF-dedupe of all 2x2 integer matrices with entries in [-n, n]
    and |det| = n.  Any index-n sublattice has an HNF basis within that range."""
    found = set()
    span = range(-n, n + 1)
    for a, b, c, d in product(span, repeat=4):
        if abs(a * d - b * c) == n:
            found.add(hnf_reduce([[a, b], [c, d]]).hnf)
    return found


def test_hnf_examples():
    assert hnf_reduce([[2, 0], [0, 2]]).hnf == ((2, 0), (0, 2))
    L = hnf_reduce([[1, 1], [1, -1]])
    assert L.hnf == ((1, 1), (0, 2))
    assert L.index == 2
    assert hnf_reduce([[0, 1], [1, 0]]).hnf == ((1, 0), (0, 1))


def test_hnf_rejects_singular():
    with pytest.raises(PreconditionError):
        hnf_reduce([[1, 2], [2, 4]])


def test_hnf_idempotent():
    L = hnf_reduce([[3, 7], [0, 4]])
    assert hnf_reduce(L.rows()).hnf == L.hnf


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4), st.data())
def test_hnf_invariant_under_unimodular_row_ops(entries, data):
    a, b, c, d = entries
    if a * d - b * c == 0:
        return
    base = [[a, b], [c, d]]
    rows = [row[:] for row in base]
    for _ in range(data.draw(st.integers(0, 6))):
        op = data.draw(st.sampled_from(["swap", "negate", "add"]))
        i = data.draw(st.integers(0, 1))
        j = 1 - i
        if op == "swap":
            rows[0], rows[1] = rows[1], rows[0]
        elif op == "negate":
            rows[i] = [-x for x in rows[i]]
        else:
            q = data.draw(st.integers(-3, 3))
            rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
    assert hnf_reduce(rows).hnf == hnf_reduce(base).hnf


def test_enumerate_sublattices_counts():
    assert len(enumerate_sublattices(2, 1)) == 1
    assert len(enumerate_sublattices(2, 2)) == 3
    assert len(enumerate_sublattices(2, 6)) == 12
    for n in range(1, 13):
        assert len(enumerate_sublattices(2, n)) == sigma(n)


def test_enumerate_sublattices_matches_brute_force():
    for n in (1, 2, 3, 4, 6):
        assert {L.hnf for L in enumerate_sublattices(2, n)} == brute_sublattices(n)


def test_enumerate_sublattices_dim3():
    # sum over d1*d2*d3 = n of d2 * d3^2
    def expected(n):
        total = 0
        for d1 in range(1, n + 1):
            if n % d1:
                continue
            for d2 in range(1, n // d1 + 1):
                if (n // d1) % d2:
                    continue
                d3 = n // d1 // d2
                total += d2 * d3 * d3
        return total

    for n in (1, 2, 3, 4):
        lattices = enumerate_sublattices(3, n)
        assert len(lattices) == expected(n)
        assert len({L.hnf for L in lattices}) == len(lattices)


def test_reduce_mod_lattice_examples():
    assert reduce_mod_lattice((5, 0), Sublattice(((2, 0), (0, 2)))) == (1, 0)
    assert reduce_mod_lattice((0, 3), Sublattice(((1, 1), (0, 2)))) == (0, 1)
    L = Sublattice(((2, 1), (0, 3)))
    assert reduce_mod_lattice((2, 1), L) == (0, 0)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_reduce_mod_lattice_difference_is_in_lattice(x, y):
    L = hnf_reduce([[3, 1], [1, 4]])
    rep = reduce_mod_lattice((x, y), L)
    for j in range(2):
        assert 0 <= rep[j] < L.hnf[j][j]
    diff = (x - rep[0], y - rep[1])
    assert reduce_mod_lattice(diff, L) == (0, 0)


def test_lattice_quotient_examples():
    Q = lattice_quotient(Sublattice(((2, 0), (0, 2))))
    assert Q.order == 4
    Q.validate()
    # exponent 2: every element doubled is the identity
    assert all(Q.add(x, x) == 0 for x in Q.elements())

    assert lattice_quotient(Sublattice(((1, 0), (0, 1)))).order == 1

    Q3 = lattice_quotient(Sublattice(((1, 0), (0, 3))))
    assert Q3.order == 3
    gen = next(x for x in Q3.elements() if x != 0)
    assert Q3.add(Q3.add(gen, gen), gen) == 0


def test_lattice_quotient_projection_consistent():
    L = hnf_reduce([[2, 1], [0, 3]])
    Q = lattice_quotient(L)
    assert Q.order == L.index
    assert Q.project((5, 7)) == Q.project(tuple(
        a + b for a, b in zip((5, 7), L.hnf[0])))
