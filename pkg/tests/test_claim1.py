import numpy as np
import pytest

from dirty_mac_lab.errors import SimulationError
from dirty_mac_lab.sim.claim import (
    BINS,
    binned_mutual_information,
    claim1_mi_check,
    claim1_report,
    equal_mass_codes,
)
from dirty_mac_lab.sim.layers import SimThresholds

SEED = 7


def test_equal_mass_codes_fill_bins_evenly():
    x = np.random.default_rng(0).normal(size=64_000)
    counts = np.bincount(equal_mass_codes(x), minlength=BINS)
    assert counts.shape == (BINS,)
    assert counts.min() >= 990 and counts.max() <= 1010


def test_independent_codes_have_near_zero_information():
    rng = np.random.default_rng(1)
    a = equal_mass_codes(rng.normal(size=200_000))
    b = equal_mass_codes(rng.normal(size=200_000))
    assert abs(binned_mutual_information(a, b)) < 0.01


def test_gaussian_noise_estimate_matches_dirty_paper_rate():
    estimate, floor = claim1_mi_check(1.0, 4.0, 1.0, "gaussian", 1_000_000, SEED)
    assert floor == 0.5
    assert estimate == pytest.approx(0.5, abs=0.02)


@pytest.mark.parametrize("family", ["uniform", "laplace"])
def test_non_gaussian_noise_is_no_worse(family):
    report = claim1_report(1.0, 4.0, 1.0, family, 1_000_000, SEED)

    assert report.noise_family == family
    assert report.mi_alt >= report.mi_gaussian - 0.02
    assert report.check(SimThresholds()) == []


def test_small_samples_and_bad_inputs_are_rejected():
    with pytest.raises(SimulationError):
        claim1_mi_check(1.0, 4.0, 1.0, "gaussian", 100, SEED)
    with pytest.raises(SimulationError):
        claim1_mi_check(0.0, 4.0, 1.0, "gaussian", 20_000, SEED)
    with pytest.raises(SimulationError):
        claim1_mi_check(1.0, 4.0, 1.0, "cauchy", 20_000, SEED)
