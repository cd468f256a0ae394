import pytest

from dirty_mac_lab.channel.params import MIN_COOPERATION_CAPACITY, ChannelParams, select_cooperation_power
from dirty_mac_lab.errors import ParameterError
from dirty_mac_lab.gap.verify import (
    GapCase,
    analytic_gap_bounds,
    classify_case,
    corner_points,
    shrink_check,
    verify_theorems,
)
from dirty_mac_lab.regions.polytope import region_from_rows


def test_shrink_check_identity_passes():
    r = region_from_rows([(1.0, 1.0, 1.0), (0.0, 1.0, 0.5)])
    assert shrink_check(r, r, 0.0, 0.0) == (True, 0.0)


def test_shrink_check_moves_outer_vertices_onto_inner_boundary():
    inner = region_from_rows([(1.0, 1.0, 1.0)])
    outer = region_from_rows([(1.0, 1.0, 2.0), (0.0, 1.0, 0.5)])
    passed, worst = shrink_check(outer, inner, 1.0, 0.5)
    assert passed
    assert worst == 0.0


def test_shrink_check_reports_worst_violation():
    inner = region_from_rows([(1.0, 1.0, 1.0)])
    capped = region_from_rows([(1.0, 1.0, 3.0), (0.0, 1.0, 0.5)])
    passed, worst = shrink_check(capped, inner, 1.0, 0.5)
    assert not passed
    assert worst == pytest.approx(1.0)

    # The (0, 3) vertex of the uncapped triangle lands at (0, 2.5).
    passed, worst = shrink_check(region_from_rows([(1.0, 1.0, 3.0)]), inner, 1.0, 0.5)
    assert not passed
    assert worst == pytest.approx(1.5)


def test_classify_case(capacity_limited_point, power_limited_point):
    small = ChannelParams(P1=10.0, P2=1.0, Q1=1.0, Q2=100.0, No=1.0, Cb21=0.4)
    q2_limited = ChannelParams(P1=100.0, P2=1.0, Q1=1.0, Q2=5.0, No=1.0, Cb21=2.0)

    cases = {
        GapCase.CB_SMALL: small,
        GapCase.THETA_CAPACITY_LIMITED: capacity_limited_point,
        GapCase.THETA_Q2_LIMITED: q2_limited,
        GapCase.THETA_POWER_LIMITED: power_limited_point,
    }
    for expected, p in cases.items():
        assert classify_case(p, select_cooperation_power(p)) is expected


def test_analytic_gap_bounds():
    assert analytic_gap_bounds(GapCase.NO_COOPERATION) == (1.0, 0.5)
    assert analytic_gap_bounds(GapCase.THETA_CAPACITY_LIMITED) == (3.0, 1.5)
    assert analytic_gap_bounds(GapCase.THETA_POWER_LIMITED) == (1.5, 1.5)
    assert analytic_gap_bounds("THETA_Q2_LIMITED") == (3.0, 1.5)
    with pytest.raises(ParameterError):
        analytic_gap_bounds("THETA_UNKNOWN")


def test_corner_points():
    r = region_from_rows([(1.0, 1.0, 1.0), (0.0, 1.0, 0.5)])
    assert corner_points(r) == {"max_sum": [0.5, 0.5], "max_r2": [0.5, 0.5]}


def test_verify_theorems_on_known_points(capacity_limited_point, power_limited_point):
    for p in (capacity_limited_point, power_limited_point):
        report = verify_theorems(p)
        assert report.passed
        assert report.worst_violation <= 1e-9
        assert report.cooperation_gain_ok
        assert (report.g1_required, report.g2_required) == (3.0, 1.5)


def test_verify_theorems_degenerate_point():
    report = verify_theorems(ChannelParams(P1=0.0, P2=0.0, Q1=0.0, Q2=0.0, No=1.0))
    assert report.passed
    assert report.no_coop.sum_gap == 0.0
    assert report.corners["inner_coop"] == {"max_sum": [0.0, 0.0], "max_r2": [0.0, 0.0]}


def test_verify_theorems_normalizes_input():
    report = verify_theorems(ChannelParams(P1=1.0, P2=8.0, Q1=2.0, Q2=3.0, No=1.0, Cb12=1.0))
    assert report.params.swapped
    assert report.params.Cb21 == 1.0
    assert report.passed


def test_report_row_is_flat(capacity_limited_point):
    row = verify_theorems(capacity_limited_point).to_row()
    assert row["gap_case"] == "THETA_CAPACITY_LIMITED"
    assert row["thetaC"] == pytest.approx(6.0)
    assert "outer_coop.sum_cutset" in row
    assert "inner_no_coop.r2" in row
    assert all(not isinstance(v, (dict, list)) for v in row.values())


def test_small_cooperation_case_follows_scheme_threshold():
    base = ChannelParams(P1=10.0, P2=1.0, Q1=1.0, Q2=100.0, No=1.0)
    at_threshold = base.model_copy(update={"Cb21": MIN_COOPERATION_CAPACITY})
    below = base.model_copy(update={"Cb21": MIN_COOPERATION_CAPACITY - 1e-9})

    assert classify_case(at_threshold, select_cooperation_power(at_threshold)) is GapCase.THETA_CAPACITY_LIMITED
    assert classify_case(below, select_cooperation_power(below)) is GapCase.CB_SMALL
