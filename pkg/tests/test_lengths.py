import pytest
from hypothesis import given, settings, strategies as st

from zslab.abelian import make_group, parse_group
from zslab.lengths import (
    LengthEngine,
    LengthSet,
    delta_of,
    half_factorial_scan,
    interval,
    iter_zero_sum,
    length_set,
    sumset,
    zero_sum_length_table,
)
from zslab.zerosum import Sequence, enumerate_atoms

from oracles import brute_length_set


def seq(G, pairs):
    return Sequence.from_pairs(G, [(G.element(c), m) for c, m in pairs])


def test_length_set_invariants():
    assert LengthSet.of(3, 2, 3).values == (2, 3)
    with pytest.raises(ValueError):
        LengthSet.of(0, 2)
    with pytest.raises(ValueError):
        LengthSet.of(1, 3)
    with pytest.raises(ValueError):
        LengthSet.of(-1)
    assert LengthSet.of(0).values == (0,)


def test_paper_length_sets_over_c5():
    C5 = make_group([5])
    eng = LengthEngine(enumerate_atoms(C5))
    B = seq(C5, [([1], 2), ([3], 1), ([4], 2), ([2], 1)])
    assert eng.length_set(B) == LengthSet.of(2, 3)
    C = seq(C5, [([1], 5), ([4], 5)])
    assert eng.length_set(C) == LengthSet.of(2, 5)


def test_ap_family_over_two_element_subset():
    C3 = make_group([3])
    g = C3.element([1])
    atoms = enumerate_atoms(C3, [g, -g])
    eng = LengthEngine(atoms)
    B = Sequence.from_pairs(C3, [(g, 6), (-g, 6)])
    assert eng.length_set(B) == LengthSet.of(4, 5, 6)
    assert eng.length_set(Sequence.empty(C3)) == LengthSet.of(0)


def test_length_set_errors():
    C3 = make_group([3])
    g = C3.element([1])
    eng = LengthEngine(enumerate_atoms(C3, [g, -g]))
    with pytest.raises(ValueError):
        eng.length_set(seq(C3, [([1], 1)]))  # not zero-sum
    with pytest.raises(ValueError):
        eng.length_set(seq(C3, [([0], 3)]))  # support outside subset


def test_delta_of_and_sumset():
    assert delta_of(LengthSet.of(2, 3)) == (1,)
    assert delta_of(LengthSet.of(2, 5)) == (3,)
    assert delta_of(LengthSet.of(2, 4, 5, 9)) == (1, 2, 4)
    with pytest.raises(ValueError):
        delta_of(LengthSet(()))
    assert sumset(LengthSet.of(2, 3), LengthSet.of(2, 3)) == LengthSet.of(4, 5, 6)
    L = LengthSet.of(3, 5)
    assert sumset(LengthSet.of(0), L) == L


def test_stsl_example_sumset():
    left = LengthSet(tuple(20 + 3 * j for j in range(11)))
    right = LengthSet(tuple(20 + 8 * j for j in range(11)))
    L = sumset(left, right)
    assert (L.min, L.max) == (40, 150)
    assert 41 not in L and 54 in L  # Frobenius gap region of {3,8}


@pytest.mark.parametrize("spec", ["C3", "C4", "C2^2"])
def test_engine_matches_exhaustive_enumerator(spec):
    G = parse_group(spec)
    atoms = enumerate_atoms(G)
    eng = LengthEngine(atoms)
    for B in iter_zero_sum(G, atoms.subset, 8):
        assert tuple(eng.length_set(B).values) == brute_length_set(B, atoms), B


def test_zero_multiplicity_shift():
    C3 = make_group([3])
    atoms = enumerate_atoms(C3)
    eng = LengthEngine(atoms)
    B = seq(C3, [([1], 3), ([2], 3)])
    shifted = seq(C3, [([0], 2), ([1], 3), ([2], 3)])
    base = eng.length_set(B).values
    assert eng.length_set(shifted).values == tuple(v + 2 for v in base)


def test_half_factorial_scan():
    assert half_factorial_scan(make_group([2]), size_bound=10) == (True, None)
    ok, wit = half_factorial_scan(make_group([3]), size_bound=6)
    assert not ok and len(wit) == 6
    C4 = make_group([4])
    g = C4.element([1])
    ok, wit = half_factorial_scan(C4, [g], size_bound=12)
    assert ok and wit is None


def test_zero_sum_length_table_agrees_with_engine():
    G = parse_group("C2xC4")
    atoms = enumerate_atoms(G)
    eng = LengthEngine(atoms)
    vecs, masks = zero_sum_length_table(atoms, 6)
    assert len(vecs) > 1
    for vec, mask in zip(vecs, masks):
        B = atoms.sequence_from_vector(vec)
        assert eng.length_set(B).mask() == mask


@st.composite
def zero_sum_pair(draw):
    n = draw(st.sampled_from([3, 4, 5]))
    G = make_group([n])
    g = G.element([1])
    def rand_zero_sum():
        picks = draw(st.lists(st.integers(1, n - 1), min_size=0, max_size=5))
        total = sum(picks) % n
        pairs = list(picks) + ([n - total] if total else [])
        return Sequence.from_elements(G, [g.scale(x) for x in pairs])
    return G, rand_zero_sum(), rand_zero_sum()


@given(zero_sum_pair())
@settings(max_examples=60, deadline=None)
def test_sumset_containment_and_growth(bundle):
    G, B, C = bundle
    atoms = enumerate_atoms(G)
    eng = LengthEngine(atoms)
    LB, LC = eng.length_set(B), eng.length_set(C)
    LBC = eng.length_set(B * C)
    assert set(sumset(LB, LC).values) <= set(LBC.values)
    if len(LB) > 1:
        for power in (2, 3, 4):
            assert len(eng.length_set(B.pow(power))) > power


@given(zero_sum_pair())
@settings(max_examples=40, deadline=None)
def test_max_gap_bounded_by_davenport(bundle):
    G, B, _ = bundle
    atoms = enumerate_atoms(G)
    L = LengthEngine(atoms).length_set(B)
    if len(L) > 1:
        assert max(delta_of(L)) <= atoms.davenport - 2


def test_interval_helper():
    assert interval(2, 5).values == (2, 3, 4, 5)
    assert LengthSet.of(2, 3, 4).is_interval
    assert not LengthSet.of(2, 4).is_interval
