import itertools

import pytest
from hypothesis import given, settings, strategies as st

from zslab.abelian import make_group, parse_group
from zslab.zerosum import Sequence, davenport, enumerate_atoms, is_atom

from oracles import brute_atoms, brute_is_atom


def seq(G, pairs):
    return Sequence.from_pairs(G, [(G.element(c), m) for c, m in pairs])


def test_sigma():
    C3 = make_group([3])
    assert seq(C3, [([1], 3)]).sigma() == C3.zero
    C4 = make_group([4])
    assert seq(C4, [([1], 1), ([2], 1)]).sigma() == C4.element([3])
    assert Sequence.empty(C4).sigma() == C4.zero


def test_sequence_ops():
    C4 = make_group([4])
    g, h = C4.element([1]), C4.element([2])
    a = Sequence.from_pairs(C4, [(g, 2)])
    b = Sequence.from_pairs(C4, [(g, 1), (h, 1)])
    assert (a * b).items == ((((1,)), 3), (((2,)), 1))
    assert len(a * b) == 4
    neg = seq(C4, [([1], 2), ([2], 1)]).negate()
    assert neg == seq(C4, [([3], 2), ([2], 1)])
    assert not b.divides(a)
    assert a.divides(a * b)
    assert (a * b).div(a) == b
    with pytest.raises(ValueError):
        a.div(b)


def test_sequence_text_round_trip():
    C3 = make_group([3])
    B = seq(C3, [([1], 2), ([2], 1)])
    assert B.to_text() == "[(1)*2,(2)*1]"
    assert Sequence.from_text(C3, "[(1)*2,(2)*1]") == B
    assert Sequence.from_text(C3, "[]") == Sequence.empty(C3)
    G = make_group([2, 4])
    B2 = seq(G, [([1, 3], 2), ([0, 1], 1)])
    assert Sequence.from_text(G, B2.to_text()) == B2
    for bad in ("nope", "[(1)*2", "[(1)]", "[(1)*x]", "[(1)*1;(2)*1]"):
        with pytest.raises(ValueError):
            Sequence.from_text(C3, bad)


def test_is_atom_examples():
    C4 = make_group([4])
    assert is_atom(seq(C4, [([1], 2), ([2], 1)]))
    assert not is_atom(seq(C4, [([1], 2), ([3], 2)]))
    C3 = make_group([3])
    assert is_atom(seq(C3, [([0], 1)]))
    assert not is_atom(Sequence.empty(C3))
    assert not is_atom(seq(C3, [([1], 1)]))  # not zero-sum


@pytest.mark.parametrize("spec", ["C3", "C4", "C5", "C2^2", "C6", "C2xC4"])
def test_is_atom_against_brute_force(spec):
    G = parse_group(spec)
    elems = list(G.elements())
    for r in range(1, 5):
        for combo in itertools.combinations_with_replacement(elems, r):
            S = Sequence.from_elements(G, combo)
            assert is_atom(S) == brute_is_atom(S), S


def test_enumerate_atoms_c3():
    G = make_group([3])
    A = enumerate_atoms(G)
    texts = [a.to_text() for a in A.atoms]
    assert texts == ["[(0)*1]", "[(1)*1,(2)*1]", "[(1)*3]", "[(2)*3]"]
    assert A.davenport == 3


def test_enumerate_atoms_c2c2():
    G = make_group([2, 2])
    A = enumerate_atoms(G)
    assert len(A.atoms) == 5
    assert A.davenport == 3
    lens = sorted(len(a) for a in A.atoms)
    assert lens == [1, 2, 2, 2, 3]


def test_enumerate_atoms_example_independent_generators():
    # e_0 = -(e_1+..+e_4), order 3: exactly the five cubes and the long atom
    G = make_group([3, 3, 3, 3])
    basis = [G.element([1 if j == i else 0 for j in range(4)]) for i in range(4)]
    e0 = -(basis[0] + basis[1] + basis[2] + basis[3])
    A = enumerate_atoms(G, [e0] + basis)
    assert sorted(len(a) for a in A.atoms) == [3, 3, 3, 3, 3, 5]
    cubes = [a for a in A.atoms if len(a) == 3]
    assert all(len(a.support) == 1 for a in cubes)
    long = [a for a in A.atoms if len(a) == 5][0]
    assert len(long.support) == 5


@pytest.mark.parametrize("spec", ["C3", "C4", "C5", "C2^2", "C6"])
def test_enumeration_complete_vs_brute_force(spec):
    G = parse_group(spec)
    A = enumerate_atoms(G)
    expected = brute_atoms(G, list(G.elements()), G.order)
    assert set(A.atoms) == expected
    assert all(is_atom(a) for a in A.atoms)


def test_enumeration_subset_order_invariance():
    G = make_group([6])
    elems = list(G.elements())
    base = set(enumerate_atoms(G, elems).atoms)
    for perm in (elems[::-1], elems[2:] + elems[:2]):
        assert set(enumerate_atoms(G, perm).atoms) == base


def test_negation_closure():
    G = make_group([5])
    A = enumerate_atoms(G)
    atom_set = set(A.atoms)
    assert all(a.negate() in atom_set for a in A.atoms)


def test_zero_behaves_as_a_prime():
    G = make_group([4])
    A = enumerate_atoms(G)
    zero_atoms = [a for a in A.atoms if G.zero in a.support]
    assert len(zero_atoms) == 1 and len(zero_atoms[0]) == 1


@pytest.mark.parametrize(
    "spec,expected",
    [("C2^2", 3), ("C2xC4", 5), ("C3xC3", 5)],
)
def test_davenport_matches_dstar_on_small_groups(spec, expected):
    assert davenport(parse_group(spec)) == expected


def test_davenport_lower_bound_dstar():
    from zslab.abelian import d_star

    for spec in ("C2", "C3", "C4", "C5", "C6", "C7", "C2^2", "C2^3", "C3^2", "C2xC4"):
        G = parse_group(spec)
        assert davenport(G) >= d_star(G)


@given(st.integers(2, 9), st.data())
@settings(max_examples=40, deadline=None)
def test_random_products_of_atoms_are_zero_sum(n, data):
    G = make_group([n])
    A = enumerate_atoms(G)
    picks = data.draw(st.lists(st.integers(0, len(A.atoms) - 1), min_size=1, max_size=4))
    prod = Sequence.empty(G)
    for i in picks:
        prod = prod * A.atoms[i]
    assert prod.is_zero_sum


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_atoms_over_random_subsets_pass_the_checker(data):
    n = data.draw(st.sampled_from([4, 5, 6, 7, 8]))
    G = make_group([n])
    elems = [g for g in G.elements()]
    size = data.draw(st.integers(1, min(4, len(elems))))
    picks = data.draw(st.lists(st.integers(0, len(elems) - 1),
                               min_size=size, max_size=size, unique=True))
    subset = [elems[i] for i in picks]
    A = enumerate_atoms(G, subset)
    assert all(is_atom(a) for a in A.atoms)
    assert all(set(a.support) <= set(subset) for a in A.atoms)
