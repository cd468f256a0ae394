"""
Worst-case-noise check for dirty-paper coding with non-Gaussian noise.

For Y = X + S + Z with X ~ N(0, P), S ~ N(0, Q) known at the transmitter and
Z of variance Nz, the Costa auxiliary U = X + a S (a = P / (P + Nz)) achieves
I(U;Y) - I(U;S). With Gaussian Z this equals C(P/Nz); any other noise of the
same variance should do no worse. Both mutual informations are estimated by a
binned plug-in estimator on equal-mass bins with Miller-Madow correction.
"""
import math
from typing import Tuple

import numpy as np
import structlog
from scipy import stats

from dirty_mac_lab.errors import SimulationError
from dirty_mac_lab.regions.polytope import cfun
from dirty_mac_lab.sim import streams
from dirty_mac_lab.sim.layers import SimReport

log = structlog.get_logger()

NOISE_FAMILIES = ("gaussian", "uniform", "laplace")
MIN_SAMPLES = 10_000
BINS = 64


def _noise(family: str, nz: float, n: int, seed: int) -> np.ndarray:
    role = f"z_{family}"
    if family == "gaussian":
        return math.sqrt(nz) * streams.standard_normal(seed, "claim1", role, n)
    if family == "uniform":
        width = math.sqrt(12.0 * nz)
        return (streams.unit_uniform(seed, "claim1", role, n) - 0.5) * width
    if family == "laplace":
        # Laplace(b) has variance 2 b^2.
        return math.sqrt(nz / 2.0) * streams.standard_laplace(seed, "claim1", role, n)
    raise SimulationError(f"unknown noise family '{family}', expected one of {NOISE_FAMILIES}")


def equal_mass_codes(x: np.ndarray, bins: int = BINS) -> np.ndarray:
    """Bin index in [0, bins) with (approximately) equal counts per bin."""
    edges = np.quantile(x, np.linspace(0.0, 1.0, bins + 1)[1:-1])
    return np.searchsorted(edges, x, side="right")


def _entropy_mm(counts: np.ndarray, n: int) -> float:
    """Plug-in entropy in bits plus the Miller-Madow term (m - 1) / (2 n ln 2)."""
    occupied = counts[counts > 0]
    return float(stats.entropy(occupied, base=2)) + (len(occupied) - 1) / (2.0 * n * math.log(2.0))


def binned_mutual_information(a_codes: np.ndarray, b_codes: np.ndarray, bins: int = BINS) -> float:
    n = len(a_codes)
    joint = np.bincount(a_codes * bins + b_codes, minlength=bins * bins)
    h_a = _entropy_mm(np.bincount(a_codes, minlength=bins), n)
    h_b = _entropy_mm(np.bincount(b_codes, minlength=bins), n)
    return h_a + h_b - _entropy_mm(joint, n)


def claim1_mi_check(P: float, Q: float, Nz: float, noise_family: str, n: int,
                    seed: int) -> Tuple[float, float]:
    """
    Estimates I(U;Y) - I(U;S) for Gaussian X, S and the chosen noise family.

    Args:
        P: Input power.
        Q: Interference variance.
        Nz: Noise variance.
        noise_family: "gaussian", "uniform" or "laplace".
        n: Number of samples.
        seed: Root seed; X and S streams do not depend on the noise family.

    Returns:
        (estimate, C(P/Nz)).
    """
    if n < MIN_SAMPLES:
        raise SimulationError(f"the binned estimator needs n >= {MIN_SAMPLES}, got {n}")
    if not (P > 0.0 and Q > 0.0 and Nz > 0.0) or not all(map(math.isfinite, (P, Q, Nz))):
        raise SimulationError(f"P, Q and Nz must be finite and positive, got {(P, Q, Nz)}")

    x = math.sqrt(P) * streams.standard_normal(seed, "claim1", "x", n)
    s = math.sqrt(Q) * streams.standard_normal(seed, "claim1", "s", n)
    z = _noise(noise_family, Nz, n, seed)
    alpha = P / (P + Nz)
    u = x + alpha * s
    y = x + s + z

    u_codes = equal_mass_codes(u)
    estimate = (binned_mutual_information(u_codes, equal_mass_codes(y))
                - binned_mutual_information(u_codes, equal_mass_codes(s)))
    floor = cfun(P / Nz)
    log.debug("Estimated dirty-paper rate", family=noise_family, estimate=estimate, floor=floor)
    return estimate, floor


def claim1_report(P: float, Q: float, Nz: float, noise_family: str, n: int, seed: int) -> SimReport:
    """Gaussian estimate and the chosen family's estimate on the same X and S draws."""
    mi_gaussian, floor = claim1_mi_check(P, Q, Nz, "gaussian", n, seed)
    mi_alt = None
    if noise_family != "gaussian":
        mi_alt, _ = claim1_mi_check(P, Q, Nz, noise_family, n, seed)
    return SimReport(
        layer="claim1", n=n, seed=seed, noise_family=noise_family,
        mi_gaussian=mi_gaussian, mi_alt=mi_alt, mi_floor=floor,
    )
