"""
Sample-level simulation of the layered modulo-lattice scheme.

One call to `_transmit` draws a full channel use sequence: interference,
noise, the relay-layer signal, the cooperation layer (user 2's precoded
signal, its quantized copy, and Tx1's combined signal) and the lattice layer
of both users. Each `run_layer_*` then forms its receiver transform and
compares empirical statistics with their closed-form predictions.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from dirty_mac_lab.channel.params import ChannelParams, SchemeParams, no_cooperation_scheme
from dirty_mac_lab.errors import SimulationError
from dirty_mac_lab.regions.bounds import cooperation_layer_noise, lattice_layer_noise
from dirty_mac_lab.sim import streams
from dirty_mac_lab.sim.lattice import ScalarLattice, lattice_for_power, mod_lattice, uniform_on_cell

log = structlog.get_logger()

REFERENCE_N = 1_000_000
INTERFERENCE_SCALE = 100.0


class SimThresholds(BaseModel):
    """Pass thresholds, stated for REFERENCE_N samples."""

    model_config = ConfigDict(frozen=True)

    variance_rel_tol: float = Field(default=0.01, gt=0.0)
    ks_uniformity: float = Field(default=0.005, gt=0.0)
    ks_invariance: float = Field(default=0.01, gt=0.0)
    identity_residual: float = Field(default=1e-9, gt=0.0)
    power_slack: float = Field(default=0.01, ge=0.0)
    correlation_sigma: float = Field(default=3.0, gt=0.0)
    mi_tol: float = Field(default=0.02, gt=0.0)

    def scaled(self, n: int) -> "SimThresholds":
        """Widens the sampling-error thresholds by sqrt(REFERENCE_N / n) below REFERENCE_N."""
        if n >= REFERENCE_N:
            return self
        factor = math.sqrt(REFERENCE_N / n)
        return self.model_copy(update={
            "variance_rel_tol": self.variance_rel_tol * factor,
            "ks_uniformity": self.ks_uniformity * factor,
            "ks_invariance": self.ks_invariance * factor,
            "power_slack": self.power_slack * factor,
        })


class SimReport(BaseModel):
    """Empirical statistics of one layer (or the worst-case-noise check) with their predictions."""

    model_config = ConfigDict(frozen=True)

    layer: str
    n: int = Field(ge=1)
    seed: int
    skipped: bool = False
    alpha: Optional[float] = None
    q: Optional[float] = None
    measured_zeff_var: Optional[float] = None
    predicted_zeff_var: Optional[float] = None
    ks_uniformity: Optional[float] = None
    ks_interference_invariance: Optional[float] = None
    max_identity_residual: Optional[float] = None
    power_x1: Optional[float] = None
    power_x2: Optional[float] = None
    power_limit_x1: Optional[float] = None
    power_limit_x2: Optional[float] = None
    max_correlation: Optional[float] = None
    rate_bookkeeping_error: Optional[float] = None
    mi_gaussian: Optional[float] = None
    mi_alt: Optional[float] = None
    mi_floor: Optional[float] = None
    noise_family: Optional[str] = None

    @property
    def variance_rel_error(self) -> Optional[float]:
        if self.measured_zeff_var is None or self.predicted_zeff_var is None:
            return None
        if self.predicted_zeff_var == 0.0:
            return abs(self.measured_zeff_var)
        return abs(self.measured_zeff_var - self.predicted_zeff_var) / self.predicted_zeff_var

    def check(self, thresholds: SimThresholds) -> List[str]:
        """Names of the statistics that miss their threshold (empty list on pass)."""
        if self.skipped:
            return []
        t = thresholds.scaled(self.n)
        failed = []
        rel = self.variance_rel_error
        if rel is not None and rel > t.variance_rel_tol:
            failed.append("measured_zeff_var")
        if self.max_identity_residual is not None and self.max_identity_residual > t.identity_residual * (self.q or 0.0):
            failed.append("max_identity_residual")
        if self.ks_uniformity is not None and self.ks_uniformity > t.ks_uniformity:
            failed.append("ks_uniformity")
        if self.ks_interference_invariance is not None and self.ks_interference_invariance > t.ks_invariance:
            failed.append("ks_interference_invariance")
        if self.power_x1 is not None and self.power_x1 > self.power_limit_x1 * (1.0 + t.power_slack):
            failed.append("power_x1")
        if self.power_x2 is not None and self.power_x2 > self.power_limit_x2 * (1.0 + t.power_slack):
            failed.append("power_x2")
        if self.max_correlation is not None and self.max_correlation > t.correlation_sigma / math.sqrt(self.n):
            failed.append("max_correlation")
        if self.rate_bookkeeping_error is not None and self.rate_bookkeeping_error > 1e-9:
            failed.append("rate_bookkeeping_error")
        if self.mi_gaussian is not None and self.mi_floor is not None:
            if abs(self.mi_gaussian - self.mi_floor) > t.mi_tol:
                failed.append("mi_gaussian")
            if self.mi_alt is not None and self.mi_alt < self.mi_gaussian - t.mi_tol:
                failed.append("mi_alt")
        return failed


@dataclass(frozen=True)
class LayerSignals:
    """All per-sample signals of one simulated block."""

    s1: np.ndarray
    s2: np.ndarray
    z: np.ndarray
    x1R: np.ndarray
    v1C: np.ndarray
    v2C: np.ndarray
    d1C: np.ndarray
    zhat: np.ndarray
    x1C: np.ndarray
    v1L: np.ndarray
    v2L: np.ndarray
    d1L: np.ndarray
    d2L: np.ndarray
    x1L: np.ndarray
    x2L: np.ndarray
    y: np.ndarray
    lat_L: ScalarLattice
    lat_C: ScalarLattice
    alpha_L: float
    alpha_C: float

    @property
    def x1(self) -> np.ndarray:
        return self.x1L + self.x1C + self.x1R

    @property
    def x2(self) -> np.ndarray:
        return self.x2L


def _require(p: ChannelParams, n: int) -> None:
    if n < 1:
        raise SimulationError(f"sample count must be >= 1, got {n}")
    if not (math.isfinite(p.Q1) and math.isfinite(p.Q2)):
        raise SimulationError("cannot simulate infinite interference power")
    if not p.is_normalized:
        raise SimulationError("simulation expects normalized params (P1 >= P2)")


def _transmit(p: ChannelParams, s: SchemeParams, n: int, seed: int, interference_scale: float = 1.0,
              alpha_L: Optional[float] = None, alpha_C: Optional[float] = None) -> LayerSignals:
    aL = s.alphaL if alpha_L is None else alpha_L
    aC = s.alphaC if alpha_C is None else alpha_C
    lat_L = lattice_for_power(s.thetaL)
    lat_C = lattice_for_power(s.thetaC)

    s1 = math.sqrt(p.Q1 * interference_scale) * streams.standard_normal(seed, "channel", "s1", n)
    s2 = math.sqrt(p.Q2 * interference_scale) * streams.standard_normal(seed, "channel", "s2", n)
    z = math.sqrt(p.No) * streams.standard_normal(seed, "channel", "z", n)
    x1R = math.sqrt(s.thetaR) * streams.standard_normal(seed, "R", "x1", n)

    # Cooperation layer: Tx2 precodes without dither, Tx1 forwards the quantized copy.
    v1C = uniform_on_cell(streams.unit_uniform(seed, "C", "v1", n), lat_C)
    v2C = uniform_on_cell(streams.unit_uniform(seed, "C", "v2", n), lat_C)
    d1C = uniform_on_cell(streams.unit_uniform(seed, "C", "d1", n), lat_C)
    zhat = math.sqrt(s.delta) * streams.standard_normal(seed, "C", "zhat", n)
    x2C = mod_lattice(v2C - aC * s2, lat_C)
    x1C = mod_lattice(v1C + (x2C + zhat) - aC * (s1 + x1R) - d1C, lat_C)

    # Lattice layer: Tx1 also treats its own relay and cooperation signals as known interference.
    v1L = uniform_on_cell(streams.unit_uniform(seed, "L", "v1", n), lat_L)
    v2L = uniform_on_cell(streams.unit_uniform(seed, "L", "v2", n), lat_L)
    d1L = uniform_on_cell(streams.unit_uniform(seed, "L", "d1", n), lat_L)
    d2L = uniform_on_cell(streams.unit_uniform(seed, "L", "d2", n), lat_L)
    x1L = mod_lattice(v1L - aL * (s1 + x1R + x1C) - d1L, lat_L)
    x2L = mod_lattice(v2L - aL * s2 - d2L, lat_L)

    y = x1L + x2L + x1C + x1R + s1 + s2 + z
    return LayerSignals(
        s1=s1, s2=s2, z=z, x1R=x1R, v1C=v1C, v2C=v2C, d1C=d1C, zhat=zhat, x1C=x1C,
        v1L=v1L, v2L=v2L, d1L=d1L, d2L=d2L, x1L=x1L, x2L=x2L, y=y,
        lat_L=lat_L, lat_C=lat_C, alpha_L=aL, alpha_C=aC,
    )


def _receive_L(sig: LayerSignals) -> np.ndarray:
    a = sig.alpha_L
    return mod_lattice(sig.y - (1.0 - a) * sig.y + sig.d1L + sig.d2L, sig.lat_L)


def _wrapped_residual(lhs: np.ndarray, rhs: np.ndarray, lat: ScalarLattice) -> float:
    return float(np.max(np.abs(mod_lattice(lhs - rhs, lat)))) if len(lhs) else 0.0


def _ks_cell(x: np.ndarray, lat: ScalarLattice) -> float:
    return float(stats.kstest(x / lat.q + 0.5, "uniform").statistic)


def _power_fields(p: ChannelParams, sig: LayerSignals) -> Dict[str, float]:
    return {
        "power_x1": float(np.mean(sig.x1 ** 2)),
        "power_x2": float(np.mean(sig.x2 ** 2)),
        "power_limit_x1": p.P1,
        "power_limit_x2": p.P2,
    }


def run_layer_L(p: ChannelParams, n: int, seed: int, s: Optional[SchemeParams] = None,
                alpha: Optional[float] = None) -> SimReport:
    """
    Lattice layer: checks the receiver transform against [v1 + v2 + z_eff] mod,
    the effective-noise variance, dither uniformity of both users' signals and
    invariance of the equivalent channel output to 100x interference power.

    Args:
        p: Normalized channel with finite Q1, Q2.
        n: Number of samples, at least 1.
        seed: Root seed; every signal comes from its own named substream.
        s: Scheme to simulate; the no-cooperation scheme when omitted.
        alpha: Receiver scaling; the MMSE coefficient alphaL when omitted.

    Returns:
        A SimReport for layer "L", or a skipped one when thetaL = 0.
    """
    _require(p, n)
    s = s or no_cooperation_scheme(p)
    if s.thetaL == 0.0:
        log.info("Lattice layer carries no power, skipping", P2=p.P2)
        return SimReport(layer="L", n=n, seed=seed, skipped=True)

    sig = _transmit(p, s, n, seed, alpha_L=alpha)
    a = sig.alpha_L
    y_L = _receive_L(sig)
    z_eff = a * sig.z - (1.0 - a) * (sig.x1L + sig.x2L)
    direct = mod_lattice(sig.v1L + sig.v2L + z_eff, sig.lat_L)

    scaled = _transmit(p, s, n, seed, interference_scale=INTERFERENCE_SCALE, alpha_L=alpha)
    y_L_scaled = _receive_L(scaled)
    invariance = 0.0 if p.Q1 == 0.0 and p.Q2 == 0.0 else float(stats.ks_2samp(y_L, y_L_scaled).statistic)

    report = SimReport(
        layer="L", n=n, seed=seed, alpha=a, q=sig.lat_L.q,
        measured_zeff_var=float(np.var(z_eff)),
        predicted_zeff_var=lattice_layer_noise(p, a),
        ks_uniformity=max(_ks_cell(sig.x1L, sig.lat_L), _ks_cell(sig.x2L, sig.lat_L)),
        ks_interference_invariance=invariance,
        max_identity_residual=_wrapped_residual(y_L, direct, sig.lat_L),
        **_power_fields(p, sig),
    )
    log.debug("Lattice layer simulated", n=n, measured=report.measured_zeff_var,
              predicted=report.predicted_zeff_var)
    return report


def run_layer_C(p: ChannelParams, s: SchemeParams, n: int, seed: int,
                alpha: Optional[float] = None) -> SimReport:
    """
    Cooperation layer: receiver transform, effective-noise variance against
    Delta + a^2 (No + 2P2) + (1-a)^2 thetaC, and the rate bookkeeping.

    Args:
        p: Normalized channel with finite Q1, Q2.
        s: Scheme from select_cooperation_power.
        n: Number of samples, at least 1.
        seed: Root seed.
        alpha: Receiver scaling; alphaC when omitted.

    Returns:
        A SimReport for layer "C", skipped when thetaC = 0.
    """
    _require(p, n)
    if s.thetaC == 0.0:
        log.info("Cooperation layer inactive, skipping", Cb21=p.Cb21)
        return SimReport(layer="C", n=n, seed=seed, skipped=True)

    sig = _transmit(p, s, n, seed, alpha_C=alpha)
    a = sig.alpha_C
    y_C = mod_lattice(sig.y - (1.0 - a) * sig.y + sig.d1C, sig.lat_C)
    z_C = sig.x1L + sig.x2L + sig.z
    z_eff = sig.zhat + a * z_C - (1.0 - a) * sig.x1C
    direct = mod_lattice(sig.v1C + sig.v2C + z_eff, sig.lat_C)

    report = SimReport(
        layer="C", n=n, seed=seed, alpha=a, q=sig.lat_C.q,
        measured_zeff_var=float(np.var(z_eff)),
        predicted_zeff_var=cooperation_layer_noise(p, s, a),
        ks_uniformity=_ks_cell(sig.x1C, sig.lat_C),
        max_identity_residual=_wrapped_residual(y_C, direct, sig.lat_C),
        rate_bookkeeping_error=abs(s.r21 - 0.5 * math.log2(1.0 + s.thetaC / s.delta)),
        **_power_fields(p, sig),
    )
    log.debug("Cooperation layer simulated", n=n, measured=report.measured_zeff_var,
              predicted=report.predicted_zeff_var)
    return report


def run_layer_R(p: ChannelParams, s: SchemeParams, n: int, seed: int) -> SimReport:
    """
    Relay layer: aggregate noise x1C + x1L + x2L + s2 + z, its variance and
    the largest pairwise correlation between the summands.

    Args:
        p: Normalized channel with finite Q1, Q2.
        s: Scheme whose thetaC and thetaR set the layer powers.
        n: Number of samples, at least 1.
        seed: Root seed.
    """
    _require(p, n)
    sig = _transmit(p, s, n, seed)
    summands = [sig.x1C, sig.x1L, sig.x2L, sig.s2, sig.z]
    z_R = np.sum(summands, axis=0)

    live = [x for x in summands if np.var(x) > 0.0]
    max_corr = 0.0
    if len(live) >= 2 and n >= 2:
        corr = np.corrcoef(np.vstack(live))
        max_corr = float(np.max(np.abs(corr[np.triu_indices(len(live), k=1)])))

    return SimReport(
        layer="R", n=n, seed=seed,
        measured_zeff_var=float(np.var(z_R)),
        predicted_zeff_var=p.No + s.thetaC + 2.0 * p.P2 + p.Q2,
        max_correlation=max_corr,
        **_power_fields(p, sig),
    )
