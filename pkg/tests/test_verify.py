import pytest

from zslab.verify import (
    FAIL,
    PASS,
    REGISTRY,
    run_check,
    run_suite,
    suite_names,
)


def test_run_check_carlitz():
    rep = run_check("carlitz")
    assert rep.status == PASS
    assert rep.repro


def test_run_check_prop3u_status_and_witnesses():
    rep = run_check("prop3u")
    assert rep.status == PASS
    assert any("not in U_{2,6}" in w or "not in U_{2,4}" in w for w in rep.witnesses)
    assert any("V1*V2*V3" in w for w in rep.witnesses)


def test_run_check_lemap_witness():
    rep = run_check("lemAP", {"orders": (3,), "k_max": 2})
    assert rep.status == PASS
    assert rep.params == {"orders": (3,), "k_max": 2}


def test_unknown_check_name():
    with pytest.raises(KeyError):
        run_check("definitely-not-a-check")
    with pytest.raises(KeyError):
        run_suite(["nope"])


def test_selftest_fixture_fails_with_witness():
    rep = run_check("selftest-fail")
    assert rep.status == FAIL
    assert rep.witnesses  # the discrepancy carries a concrete witness
    assert "U_2(C3)" in rep.detail
    assert "selftest-fail" not in suite_names()


def test_suite_subset_and_order():
    names = ["lem23", "carlitz"]
    reports = run_suite(names)
    assert [r.name for r in reports] == names
    assert all(r.ok for r in reports)


def test_report_dict_shape():
    rep = run_check("stsl_bound_example")
    d = rep.as_dict()
    assert set(d) == {"name", "params", "status", "detail", "witnesses", "repro", "elapsed"}
    assert isinstance(d["witnesses"], list)


def test_registry_has_all_catalog_checks():
    expected = {
        "carlitz", "lem23", "lemAP", "rho_even", "rho_odd_cyclic", "uk_interval",
        "lambda_formula", "u2_extremal", "prop3u", "dist_theorem", "daleth_bound",
        "cgp_distance", "closed_forms", "c5_shapes", "stsl_empirical",
        "cf_vs_bruteforce", "stsl_bound_example",
    }
    assert expected <= set(REGISTRY)
    assert set(suite_names()) == expected


def test_parallel_suite_matches_sequential():
    names = ["lem23", "stsl_bound_example", "rho_even"]
    seq = [(r.name, r.status, r.detail) for r in run_suite(names, jobs=1)]
    par = [(r.name, r.status, r.detail) for r in run_suite(names, jobs=2)]
    assert seq == par
