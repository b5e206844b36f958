from fractions import Fraction

import pytest

from rainbowmatch.bounds import (
    DESK_SCALE_LIMIT,
    edge_disjoint_guarantee_report,
    edge_disjoint_guarantee_threshold,
    threshold_table,
)
from rainbowmatch.errors import DomainError


def test_guarantee_threshold_eps_1():
    assert edge_disjoint_guarantee_threshold(1) == 10**20


def test_guarantee_threshold_eps_01_exact():
    assert edge_disjoint_guarantee_threshold(Fraction(1, 10)) == 10**180


def test_guarantee_threshold_eps_05():
    assert edge_disjoint_guarantee_threshold(0.5) == 2**32 * 10**20


def test_guarantee_threshold_domain():
    with pytest.raises(DomainError):
        edge_disjoint_guarantee_threshold(0)
    with pytest.raises(DomainError):
        edge_disjoint_guarantee_threshold(2)


def test_guarantee_nonintegral_exponent_reports_magnitude():
    rep = edge_disjoint_guarantee_report(0.3)
    assert rep.value is None and not rep.exact
    assert rep.log10 > 20
    assert not rep.feasible_at_desk_scale


def test_guarantee_infeasible_for_all_eps():
    for eps in (1, 0.5, 0.25, 0.1, 0.01):
        assert not edge_disjoint_guarantee_report(eps).feasible_at_desk_scale


def _by_name(reports, name):
    return next(r for r in reports if r.name == name)


def test_table_two_hop_threshold():
    reports = threshold_table(0.3, m=1)
    rep = _by_name(reports, "two_hop_degree_threshold")
    assert rep.value == 100
    assert rep.feasible_at_desk_scale


def test_table_rainbow_diameter():
    reports = threshold_table(Fraction(1, 10))
    rep = _by_name(reports, "rainbow_connected_set_diameter")
    assert rep.value == 128000


def test_table_freeness_decay():
    reports = threshold_table(0.1, k1=Fraction(10**10))
    rep = _by_name(reports, "freeness_decay")
    assert rep.value == 100


def test_table_connected_set_formulas():
    reports = threshold_table(0.5, k=4)
    assert _by_name(reports, "connected_set_diameter").value == 160
    assert _by_name(reports, "connected_set_min_order").value == 512
    assert _by_name(reports, "rainbow_connected_set_diameter").value == 5120
    assert _by_name(reports, "rainbow_connected_set_min_order").value == 4 * 1800 * 16
    assert _by_name(reports, "midpoint_bundle_size").value == 9 * 5120 + 12


def test_table_pin_budget_growth():
    reports = threshold_table(0.1, k1=1)
    assert _by_name(reports, "pin_budget_growth").value == 300


def test_initial_pin_budget_verbatim_can_be_below_one():
    # evaluated verbatim; flagged feasible precisely because it is tiny
    reports = threshold_table(Fraction(1, 10))
    rep = _by_name(reports, "initial_pin_budget")
    assert rep.exact
    assert rep.value == Fraction(1, 10**80)
    assert rep.value < 1


def test_monotone_in_eps():
    names = (
        "edge_disjoint_guarantee_threshold",
        "connected_set_diameter",
        "rainbow_connected_set_diameter",
    )
    eps_grid = [Fraction(1, d) for d in (1, 2, 4, 5, 8, 10)]
    for name in names:
        values = []
        for eps in eps_grid:
            rep = _by_name(threshold_table(eps, m=1, k=1, k1=1), name)
            values.append(rep.log10)
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_feasibility_flag_boundary():
    rep = _by_name(threshold_table(Fraction(1, 10), m=1), "two_hop_degree_threshold")
    assert rep.value == 900
    assert rep.feasible_at_desk_scale
    assert DESK_SCALE_LIMIT == 10**6
