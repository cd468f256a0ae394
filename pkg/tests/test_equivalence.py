from dirty_mac_lab.fme.equivalence import check_equivalence
from dirty_mac_lab.gap.sweep import SweepRanges, sample_sweep


def test_projected_layer_systems_match_closed_forms():
    points = sample_sweep(SweepRanges(), 1000, 11)
    summary = check_equivalence(points)

    assert summary.count == 1000
    assert summary.fme_no_coop_mismatches == 0
    assert summary.fme_coop_mismatches == 0
    assert summary.max_fme_error <= 1e-9


def test_cooperation_inner_bound_collapses_without_cooperation():
    points = sample_sweep(SweepRanges(), 1000, 12)
    summary = check_equivalence(points)

    assert summary.collapse_mismatches == 0
    assert summary.max_collapse_error <= 1e-12
    assert summary.passed
