import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zslab.abelian import make_group, parse_group
from zslab.lengths import LengthSet
from zslab.structure import (
    c5_shape,
    cf_odd,
    classify_aamp,
    closed_form_membership,
    d_a_criterion,
    delta_star_observed,
    min_bound,
    min_delta_two_element,
)

from oracles import brute_is_aamp


def test_classify_examples():
    d1 = classify_aamp(LengthSet.of(4, 5, 6), 1, 0)
    assert d1 is not None and d1.y == 4 and d1.is_ap
    d2 = classify_aamp(LengthSet.of(2, 3, 5), 3, 0)
    assert d2 is not None and d2.period == (0, 1, 3) and d2.y == 2 and d2.is_amp
    d3 = classify_aamp(LengthSet.of(2, 5), 3, 0)
    assert d3 is not None and d3.is_ap
    # the definition does not admit {2,4} at difference 1 with bound 1:
    # the end part must sit within max L* + [1, M]
    assert classify_aamp(LengthSet.of(2, 4), 1, 1) is None
    assert min_bound(LengthSet.of(2, 4), 1) == 2


def test_classify_errors():
    with pytest.raises(ValueError):
        classify_aamp(LengthSet(()), 1, 0)
    with pytest.raises(ValueError):
        classify_aamp(LengthSet.of(2), 0, 0)
    with pytest.raises(ValueError):
        classify_aamp(LengthSet.of(2), 1, -1)


def test_min_bound_examples():
    assert min_bound(LengthSet.of(4, 7, 10), 3) == 0
    assert min_bound(LengthSet.of(2, 10), 1) == 8
    from zslab.lengths import sumset

    left = LengthSet(tuple(20 + 3 * j for j in range(11)))
    right = LengthSet(tuple(20 + 8 * j for j in range(11)))
    assert min_bound(sumset(left, right), 1) >= 14


small_sets = st.lists(st.integers(2, 18), min_size=1, max_size=6).map(
    lambda v: LengthSet(tuple(v))
)


@given(small_sets, st.integers(1, 5), st.integers(0, 5))
@settings(max_examples=200, deadline=None)
def test_classifier_matches_definition_oracle(L, d, M):
    got = classify_aamp(L, d, M)
    assert (got is not None) == brute_is_aamp(L.values, d, M)
    if got is not None:
        assert got.reconstruct() == L
        assert set(got.period) >= {0, d}
        assert all(0 <= p <= d for p in got.period)


@given(small_sets, st.integers(1, 5))
@settings(max_examples=100, deadline=None)
def test_every_set_is_aap_at_full_width(L, d):
    width = L.max - L.min
    assert classify_aamp(L, d, width) is not None
    assert min_bound(L, d) <= width


def test_cf_odd_examples():
    assert cf_odd(11, 3).terms == (3, 1, 2)
    assert cf_odd(10, 3).terms == (3, 2, 1)
    assert cf_odd(7, 6).terms == (1, 5, 1)
    with pytest.raises(ValueError):
        cf_odd(10, 4)  # not coprime
    with pytest.raises(ValueError):
        cf_odd(10, 1)
    with pytest.raises(ValueError):
        cf_odd(3, 3)


def test_cf_odd_round_trip_up_to_200():
    for n in range(3, 201):
        for a in range(2, n):
            if math.gcd(a, n) != 1:
                continue
            exp = cf_odd(n, a)
            assert exp.value() == Fraction(n, a)
            assert len(exp.terms) % 2 == 1
            assert all(t >= 1 for t in exp.terms)


def test_min_delta_two_element_examples():
    assert min_delta_two_element(7, 6) == 5
    assert min_delta_two_element(10, 3) == 2
    assert min_delta_two_element(11, 3) == 1


def test_d_a_criterion_examples():
    assert d_a_criterion(7, 1, 1) == (6, 5)
    assert d_a_criterion(10, 1, 3) == (3, 2)
    assert d_a_criterion(10, 2, 2) is None
    with pytest.raises(ValueError):
        d_a_criterion(10, 0, 1)


def test_d_a_criterion_consistency_with_cf():
    # where the criterion yields d_a > sqrt(n), the cf formula must agree
    hits = 0
    for n in range(5, 201):
        for c1 in range(1, 5):
            for c2 in range(1, 5):
                got = d_a_criterion(n, c1, c2)
                if got is None:
                    continue
                a, d_a = got
                if not (2 <= a <= n - 1) or math.gcd(a, n) != 1:
                    continue
                if d_a * d_a <= n:
                    continue
                assert min_delta_two_element(n, a) == d_a, (n, c1, c2)
                hits += 1
    assert hits > 50


def test_delta_star_observed_examples():
    assert delta_star_observed(make_group([5]), 20).observed == (1, 3)
    rep6 = delta_star_observed(make_group([6]), 24)
    assert rep6.observed == (1, 2, 4)
    assert delta_star_observed(parse_group("C2^3"), 14).observed == (1, 2)
    with pytest.raises(ValueError):
        delta_star_observed(parse_group("C13"), 10)


def test_delta_star_details():
    rep = delta_star_observed(make_group([5]), 20)
    two_el = [e for e in rep.entries if len(e.subset) == 2]
    assert two_el and all(e.method == "cf-exact" for e in two_el)
    singles = [e for e in rep.entries if len(e.subset) == 1]
    assert all(e.minimum is None for e in singles)  # half-factorial: empty Delta


def test_gap_theorem_instance_c7():
    rep = delta_star_observed(make_group([7]), 28)
    assert 4 not in rep.observed  # exp - 3
    assert {1, 5} <= set(rep.observed)
    # exact side: no two-element subset attains 4 by the cf formula
    for a in range(2, 7):
        assert min_delta_two_element(7, a) != 4


def test_delta_star_construction_instances():
    assert {1, 2} <= set(delta_star_observed(parse_group("C2^3"), 14).observed)
    for n in (3, 4, 5, 6, 7):
        rep = delta_star_observed(make_group([n]), 4 * n)
        assert n - 2 in rep.observed or n - 2 == 0


def test_closed_form_membership_examples():
    C3 = make_group([3])
    ok, tag, params = closed_form_membership(C3, LengthSet.of(4, 5, 6))
    assert ok and params == {"y": 0, "k": 2}
    C4 = make_group([4])
    ok, tag, params = closed_form_membership(C4, LengthSet.of(2, 4))
    assert ok and tag == "y+2k+2[0,k]"
    assert closed_form_membership(C4, LengthSet.of(2, 5))[0] is False
    assert closed_form_membership(make_group([2]), LengthSet.of(7))[0] is True
    with pytest.raises(ValueError):
        closed_form_membership(make_group([7]), LengthSet.of(2))


def test_c5_shape_examples():
    assert c5_shape(LengthSet.of(2, 3, 4)) == "AP-diff-1"
    assert c5_shape(LengthSet.of(2, 5)) == "AP-diff-3"
    assert c5_shape(LengthSet.of(2, 4, 5, 7)) == "AMP-period-{0,2,3}"
    assert c5_shape(LengthSet.of(2, 3, 5, 6)) == "AMP-period-{0,1,3}"
    assert c5_shape(LengthSet.of(2, 9)) is None
