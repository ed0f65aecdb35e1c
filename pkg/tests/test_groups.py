import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumsetlab.errors import CapacityError, PreconditionError
from sumsetlab.groups import (bit_indices, enumerate_subgroups,
                              make_group, parse_elements, parse_group_spec,
                              quotient, subgroup_closure)

small_moduli = st.lists(st.integers(1, 6), min_size=1, max_size=3)


def element_order(G, x):
    n, y = 1, x
    while y != 0:
        y = G.add(y, x)
        n += 1
    return n


def brute_subgroups(G):
    """Oracle: closure of every generator subset, deduplicated."""
    from itertools import combinations

    found = set()
    elems = list(G.elements())
    for size in range(len(elems) + 1):
        for gens in combinations(elems, size):
            found.add(subgroup_closure(G, gens).elements)
    return sorted(found, key=lambda t: (len(t), t))


def test_make_group_examples():
    assert make_group([6]).order == 6
    assert make_group([2, 4]).order == 8
    with pytest.raises(CapacityError):
        make_group([2] * 25)
    with pytest.raises(PreconditionError):
        make_group([])


def test_every_nonzero_element_has_order_two_in_z2_cubed():
    G = make_group([2, 2, 2])
    assert G.order == 8
    assert all(element_order(G, x) == 2 for x in range(1, 8))


@given(small_moduli, st.integers(0, 10**6))
def test_encode_decode_roundtrip(moduli, raw):
    G = make_group(moduli)
    x = raw % G.order
    assert G.encode(G.decode(x)) == x


@given(small_moduli, st.data())
def test_translate_bits_matches_elementwise_translation(moduli, data):
    G = make_group(moduli)
    bits = data.draw(st.integers(0, (1 << G.order) - 1))
    g = data.draw(st.integers(0, G.order - 1))
    expected = 0
    for x in bit_indices(bits):
        expected |= 1 << G.add(x, g)
    assert G.translate_bits(bits, g) == expected


@given(small_moduli, st.data())
def test_negate_bits_matches_elementwise(moduli, data):
    G = make_group(moduli)
    bits = data.draw(st.integers(0, (1 << G.order) - 1))
    expected = 0
    for x in bit_indices(bits):
        expected |= 1 << G.neg(x)
    assert G.negate_bits(bits) == expected


def test_subgroup_closure_examples():
    G6 = make_group([6])
    assert subgroup_closure(G6, [3]).elements == (0, 3)
    assert subgroup_closure(G6, []).elements == (0,)
    G24 = make_group([2, 4])
    full = subgroup_closure(G24, [G24.encode([1, 0]), G24.encode([0, 1])])
    assert full.order == 8


def test_enumerate_subgroups_against_brute_force():
    for moduli in ([6], [2, 2], [8], [2, 4], [3, 3], [2, 2, 2]):
        G = make_group(moduli)
        got = [S.elements for S in enumerate_subgroups(G)]
        assert got == brute_subgroups(G)


def test_enumerate_subgroups_counts():
    assert len(enumerate_subgroups(make_group([6]))) == 4
    assert len(enumerate_subgroups(make_group([7]))) == 2
    assert len(enumerate_subgroups(make_group([2, 2]))) == 5


def test_enumerate_subgroups_axioms_and_lagrange():
    G = make_group([2, 4])
    for S in enumerate_subgroups(G):
        S.validate()
        assert G.order % S.order == 0


def test_enumerate_subgroups_capacity():
    with pytest.raises(CapacityError):
        enumerate_subgroups(make_group([5000], max_order=1 << 20))


def test_quotient_examples():
    G = make_group([6])
    K = subgroup_closure(G, [3])
    Q = quotient(G, K)
    assert Q.order == 3
    Q.validate()
    trivial = quotient(G, subgroup_closure(G, []))
    assert trivial.order == 6
    full = quotient(G, subgroup_closure(G, [1]))
    assert full.order == 1


def test_quotient_projection_is_homomorphism():
    G = make_group([2, 4])
    K = subgroup_closure(G, [G.encode([1, 2])])
    Q = quotient(G, K)
    assert Q.order * K.order == G.order
    for x in G.elements():
        for y in G.elements():
            assert Q.project(G.add(x, y)) == Q.add(Q.project(x), Q.project(y))


def test_quotient_rejects_non_subgroup():
    G = make_group([6])
    from sumsetlab.groups import Subgroup

    with pytest.raises(PreconditionError):
        quotient(G, Subgroup(G, (0, 1)))


def test_group_spec_parsing():
    assert parse_group_spec("6").moduli == (6,)
    assert parse_group_spec("2x4").moduli == (2, 4)
    with pytest.raises(PreconditionError):
        parse_group_spec("2xfoo")


def test_element_literals():
    G = make_group([2, 4])
    assert parse_elements(G, "0,1,3") == [0, 1, 3]
    assert parse_elements(G, "(0,1);(1,3)") == [G.encode([0, 1]), G.encode([1, 3])]
    assert parse_elements(G, "") == []
