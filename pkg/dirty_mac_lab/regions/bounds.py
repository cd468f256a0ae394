"""
Inner and outer bounds on the capacity region, with and without cooperation.

Outer bounds are cut-set and interference-limited sum-rate bounds plus the
user-2 single-rate bound. Inner bounds come from the layered scheme: a lattice
layer shared by both users, an optional cooperation layer fed by user 2's
compressed signal, and a relay layer carried by user 1 alone.
"""
import math

from pydantic import BaseModel, ConfigDict

from dirty_mac_lab.channel.params import ChannelParams, SchemeParams, no_cooperation_scheme
from dirty_mac_lab.regions.polytope import HalfPlane, RateRegion, cfun, log2_plus, positive_part

SUM_CUTSET = "sum_cutset"
SUM_INTERFERENCE = "sum_interference"
SUM = "sum"
R2 = "r2"


class LayerRates(BaseModel):
    """Sum-rate bound of each layer and the cap on user 2's relay-layer rate."""

    model_config = ConfigDict(frozen=True)

    lattice: float
    cooperation: float
    relay: float
    relay_r2_cap: float

    @property
    def common(self) -> float:
        """Rate available to both users through the lattice and cooperation layers."""
        return self.lattice + self.cooperation


def _interference_ratio(signal: float, inr2: float) -> float:
    # signal / INR2 with the INR2 = +inf limit taken as 0.
    if math.isinf(inr2):
        return 0.0
    return signal / inr2


def layer_rates(p: ChannelParams, s: SchemeParams) -> LayerRates:
    """Per-layer bounds for the scheme `s`; a scheme with thetaC = 0 has no cooperation layer."""
    base = p.No + 2.0 * p.P2
    lattice = 0.5 * log2_plus(0.5 + p.snr2)
    cooperation = positive_part(cfun(s.thetaC / base) - 0.5)
    relay = cfun(s.thetaR / (p.No + s.thetaC + 2.0 * p.P2 + p.Q2))
    return LayerRates(
        lattice=lattice,
        cooperation=cooperation,
        relay=relay,
        relay_r2_cap=positive_part(p.Cb21 - s.r21),
    )


def lattice_layer_noise(p: ChannelParams, alpha: float) -> float:
    """Effective noise of the lattice layer for scaling alpha: a^2 No + (1-a)^2 2P2."""
    return alpha ** 2 * p.No + (1.0 - alpha) ** 2 * 2.0 * p.P2


def lattice_layer_rate(p: ChannelParams, alpha: float) -> float:
    """(1/2) log2+(thetaL / effective noise); maximised at the MMSE alpha."""
    noise = lattice_layer_noise(p, alpha)
    if noise <= 0.0:
        return math.inf
    return 0.5 * log2_plus(p.P2 / noise)


def cooperation_layer_noise(p: ChannelParams, s: SchemeParams, alpha: float) -> float:
    """Effective noise of the cooperation layer: Delta + a^2 (No + 2P2) + (1-a)^2 thetaC."""
    return s.delta + alpha ** 2 * (p.No + 2.0 * p.P2) + (1.0 - alpha) ** 2 * s.thetaC


def cooperation_layer_rate(p: ChannelParams, s: SchemeParams, alpha: float) -> float:
    """(1/2) log2+(thetaC / effective noise); 0 without a cooperation layer, maximised at alphaC."""
    noise = cooperation_layer_noise(p, s, alpha)
    if s.thetaC == 0.0 or noise <= 0.0:
        return 0.0
    return 0.5 * log2_plus(s.thetaC / noise)


def outer_no_coop(p: ChannelParams) -> RateRegion:
    snr1, snr2, inr2 = p.snr1, p.snr2, p.inr2
    interference_sum = math.inf
    if inr2 > 0.0:
        interference_sum = cfun(_interference_ratio(1.0 + snr1 + snr2, inr2)) + cfun(snr2)
    return RateRegion(
        name="outer_no_coop",
        constraints=(
            HalfPlane(a=1.0, b=1.0, c=cfun(snr1 + snr2), label=SUM_CUTSET),
            HalfPlane(a=1.0, b=1.0, c=interference_sum, label=SUM_INTERFERENCE),
            HalfPlane(a=0.0, b=1.0, c=cfun(snr2), label=R2),
        ),
    )


def outer_coop(p: ChannelParams) -> RateRegion:
    snr1, snr2, inr2 = p.snr1, p.snr2, p.inr2
    beamformed = snr1 + snr2 + 2.0 * math.sqrt(snr1 * snr2)
    interference_sum = math.inf
    if inr2 > 0.0:
        interference_sum = cfun(_interference_ratio(1.0 + beamformed, inr2)) + cfun(snr2) + p.Cb21
    return RateRegion(
        name="outer_coop",
        constraints=(
            HalfPlane(a=1.0, b=1.0, c=cfun(beamformed), label=SUM_CUTSET),
            HalfPlane(a=1.0, b=1.0, c=interference_sum, label=SUM_INTERFERENCE),
            HalfPlane(a=0.0, b=1.0, c=cfun(snr2) + p.Cb21, label=R2),
        ),
    )


def inner_no_coop(p: ChannelParams) -> RateRegion:
    rates = layer_rates(p, no_cooperation_scheme(p))
    return RateRegion(
        name="inner_no_coop",
        constraints=(
            HalfPlane(a=1.0, b=1.0, c=rates.lattice + rates.relay, label=SUM),
            HalfPlane(a=0.0, b=1.0, c=rates.lattice, label=R2),
        ),
    )


def inner_coop(p: ChannelParams, s: SchemeParams) -> RateRegion:
    rates = layer_rates(p, s)
    return RateRegion(
        name="inner_coop",
        constraints=(
            HalfPlane(a=1.0, b=1.0, c=rates.common + rates.relay, label=SUM),
            HalfPlane(a=0.0, b=1.0, c=rates.common + rates.relay_r2_cap, label=R2),
        ),
    )
