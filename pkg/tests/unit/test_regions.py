import math

import numpy as np
import pytest
from pydantic import ValidationError

from dirty_mac_lab.channel.params import ChannelParams, no_cooperation_scheme, select_cooperation_power
from dirty_mac_lab.errors import ParameterError, RegionError
from dirty_mac_lab.gap.sweep import SweepRanges, sample_sweep
from dirty_mac_lab.regions.bounds import (
    R2,
    SUM,
    SUM_CUTSET,
    SUM_INTERFERENCE,
    cooperation_layer_noise,
    cooperation_layer_rate,
    inner_coop,
    inner_no_coop,
    lattice_layer_noise,
    lattice_layer_rate,
    layer_rates,
    outer_coop,
    outer_no_coop,
)
from dirty_mac_lab.regions.polytope import (
    HalfPlane,
    cfun,
    contains,
    log2_plus,
    region_from_rows,
    to_payload,
    vertices,
)


def _point(snr1, snr2, inr2=1.0, cb21=0.0, inr1=1.0):
    return ChannelParams(P1=snr1, P2=snr2, Q1=inr1, Q2=inr2, No=1.0, Cb21=cb21)


def test_capacity_function_values():
    assert cfun(3.0) == 1.0
    assert cfun(0.0) == 0.0
    assert cfun(6.0) == pytest.approx(1.403677461, abs=1e-9)
    assert math.isinf(cfun(math.inf))
    with pytest.raises(ParameterError):
        cfun(-1.0)


def test_log2_plus_clamps_below_one():
    assert log2_plus(0.75) == 0.0
    assert log2_plus(0.0) == 0.0
    assert log2_plus(4.0) == 2.0


def test_outer_no_coop_with_infinite_interference():
    r = outer_no_coop(_point(3.0, 3.0, inr2=math.inf))

    assert r.bound(SUM_CUTSET) == pytest.approx(1.403677461, abs=1e-9)
    assert r.bound(SUM_INTERFERENCE) == pytest.approx(1.0)
    assert r.bound(R2) == pytest.approx(1.0)
    assert r.sum_rate_bound == pytest.approx(1.0)


def test_outer_no_coop_zero_power_is_a_point():
    r = outer_no_coop(_point(0.0, 0.0))
    assert r.bound(SUM_CUTSET) == 0.0
    assert r.bound(R2) == 0.0
    assert vertices(r) == [(0.0, 0.0)]


def test_outer_no_coop_without_interference_drops_interference_bound():
    r = outer_no_coop(_point(3.0, 1.0, inr2=0.0))
    assert math.isinf(r.bound(SUM_INTERFERENCE))
    assert not r.constraints[1].active
    assert to_payload(r)["constraints"][1]["c"] == "inf"


def test_inner_no_coop_examples():
    equal = inner_no_coop(_point(1.5, 1.5, inr2=37.0))
    assert equal.sum_rate_bound == pytest.approx(0.5)
    assert equal.r2_bound == pytest.approx(0.5)

    weak = inner_no_coop(_point(1.0, 0.25))
    assert weak.r2_bound == 0.0

    strong = inner_no_coop(_point(15.0, 1.5, inr2=0.0))
    assert strong.sum_rate_bound == pytest.approx(0.5 + cfun(13.5 / 4.0))
    assert cfun(13.5 / 4.0) == pytest.approx(1.06464, abs=1e-4)


def test_outer_coop_examples():
    s = 2.0
    r = outer_coop(_point(s, s))
    assert r.bound(SUM_CUTSET) == pytest.approx(cfun(4.0 * s))

    r = outer_coop(_point(3.0, 0.0, inr2=1.0, cb21=0.5))
    assert r.bound(SUM_CUTSET) == pytest.approx(1.0)
    assert r.sum_rate_bound == pytest.approx(1.0)
    assert r.bound(R2) == pytest.approx(0.5)

    r = outer_coop(_point(3.0, 1.0, cb21=100.0))
    assert r.bound(R2) == pytest.approx(cfun(1.0) + 100.0)


def test_outer_coop_is_monotone_in_power_and_capacity():
    base = outer_coop(_point(4.0, 2.0, inr2=5.0, cb21=1.0))
    for bigger in (_point(8.0, 2.0, inr2=5.0, cb21=1.0),
                   _point(4.0, 3.0, inr2=5.0, cb21=1.0),
                   _point(4.0, 2.0, inr2=5.0, cb21=2.0)):
        grown = outer_coop(bigger)
        for old, new in zip(base.constraints, grown.constraints):
            assert new.c >= old.c


def test_inner_coop_capacity_limited_layers(capacity_limited_point):
    s = select_cooperation_power(capacity_limited_point)
    rates = layer_rates(capacity_limited_point, s)

    assert rates.cooperation == pytest.approx(0.29248125, abs=1e-8)
    assert rates.relay_r2_cap == pytest.approx(0.0, abs=1e-12)
    assert rates.relay == pytest.approx(cfun(3.0 / 109.0))

    r = inner_coop(capacity_limited_point, s)
    assert r.sum_rate_bound == pytest.approx(rates.lattice + rates.cooperation + rates.relay)
    assert r.r2_bound == pytest.approx(rates.lattice + rates.cooperation)


def test_inner_coop_power_limited_has_no_relay_rate(power_limited_point):
    s = select_cooperation_power(power_limited_point)
    assert layer_rates(power_limited_point, s).relay == 0.0


def test_inner_coop_collapses_without_cooperation():
    p = _point(20.0, 2.0, inr2=7.0, cb21=0.0)
    coop = inner_coop(p, select_cooperation_power(p))
    assert vertices(coop) == vertices(inner_no_coop(p))


def test_effective_noise_at_mmse_scaling(capacity_limited_point):
    s = select_cooperation_power(capacity_limited_point)
    assert lattice_layer_noise(capacity_limited_point, s.alphaL) == pytest.approx(2.0 / 3.0)
    assert cooperation_layer_noise(capacity_limited_point, s, s.alphaC) == pytest.approx(4.0)


def test_lattice_rate_is_maximised_at_mmse_scaling():
    p = _point(9.0, 4.0)
    s = no_cooperation_scheme(p)
    best = lattice_layer_rate(p, s.alphaL)

    assert best == pytest.approx(layer_rates(p, s).lattice)
    for alpha in np.linspace(0.0, 0.99, 34):
        assert lattice_layer_rate(p, float(alpha)) <= best + 1e-12


def test_vertices_are_counterclockwise_from_origin():
    r = region_from_rows([(1.0, 1.0, 1.0), (0.0, 1.0, 0.5)])
    assert vertices(r) == [(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (0.0, 0.5)]


def test_vertices_of_degenerate_and_redundant_regions():
    assert vertices(region_from_rows([(1.0, 1.0, 0.0)])) == [(0.0, 0.0)]

    r = region_from_rows([(1.0, 1.0, 2.0), (1.0, 1.0, 1.0), (0.0, 1.0, 3.0)])
    assert vertices(r) == [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]


def test_vertices_reject_unbounded_and_empty_regions():
    with pytest.raises(RegionError):
        vertices(region_from_rows([(1.0, 0.0, 1.0)]))
    with pytest.raises(RegionError):
        vertices(region_from_rows([(1.0, 1.0, -1.0)]))


def test_contains_uses_additive_slack():
    r = region_from_rows([(1.0, 1.0, 1.0)])

    assert contains(r, (0.5, 0.5), tol=0.0)
    assert not contains(r, (0.6, 0.5), tol=1e-9)
    assert contains(r, (0.5, 0.5 + 1e-12), tol=1e-9)
    assert not contains(r, (-0.1, 0.0), tol=1e-9)
    with pytest.raises(ParameterError):
        contains(r, (0.0, 0.0), tol=-1.0)


def test_half_plane_validation():
    with pytest.raises(ValidationError):
        HalfPlane(a=0.0, b=0.0, c=1.0)
    with pytest.raises(ValidationError):
        HalfPlane(a=1.0, b=0.0, c=-math.inf)


@pytest.fixture(scope="module")
def sweep_points():
    return sample_sweep(SweepRanges(), 2000, 20240601)


def test_inner_regions_lie_inside_outer_regions(sweep_points):
    for p in sweep_points:
        s = select_cooperation_power(p)
        pairs = ((inner_no_coop(p), outer_no_coop(p)), (inner_coop(p, s), outer_coop(p)))
        for inner, outer in pairs:
            for v in vertices(inner):
                assert contains(outer, v, tol=1e-9), (p, inner.name, v)


def test_all_region_bounds_are_nonnegative(sweep_points):
    for p in sweep_points:
        regions = (outer_no_coop(p), inner_no_coop(p), outer_coop(p),
                   inner_coop(p, select_cooperation_power(p)))
        for region in regions:
            assert all(hp.c >= 0.0 for hp in region.constraints), (p, region.name)


def test_less_interference_never_lowers_interference_sum_bound(sweep_points):
    for p in sweep_points[:500]:
        quieter = p.model_copy(update={"Q2": p.Q2 / 10.0})
        assert outer_no_coop(quieter).bound(SUM_INTERFERENCE) >= outer_no_coop(p).bound(SUM_INTERFERENCE) - 1e-12
        assert outer_coop(quieter).bound(SUM_INTERFERENCE) >= outer_coop(p).bound(SUM_INTERFERENCE) - 1e-12


def test_per_constraint_gaps_without_cooperation(sweep_points):
    for p in sweep_points:
        outer, inner = outer_no_coop(p), inner_no_coop(p)
        assert outer.bound(R2) - inner.bound(R2) <= 0.5 + 1e-12
        sum_bound = SUM_CUTSET if p.inr2 <= 1.0 + 2.0 * p.snr2 else SUM_INTERFERENCE
        assert outer.bound(sum_bound) - inner.bound(SUM) <= 1.0 + 1e-12, p


def test_cooperation_rate_is_maximised_at_mmse_scaling(capacity_limited_point):
    p = capacity_limited_point
    s = select_cooperation_power(p)
    best = cooperation_layer_rate(p, s, s.alphaC)

    assert best == pytest.approx(cfun(2.0) - 0.5)
    assert best == pytest.approx(layer_rates(p, s).cooperation)
    for alpha in np.linspace(0.0, 0.99, 34):
        assert cooperation_layer_rate(p, s, float(alpha)) <= best + 1e-12


def test_cooperation_rate_is_zero_without_cooperation_layer():
    p = _point(10.0, 1.0, cb21=0.2)
    s = select_cooperation_power(p)
    assert cooperation_layer_rate(p, s, 0.5) == 0.0
