"""
Channel and scheme parameters.

`ChannelParams` holds the physical description of the doubly-dirty MAC
(powers, interference and noise variances, cooperation link capacities).
`SchemeParams` holds every derived quantity the layered scheme consumes:
layer powers, MMSE coefficients, quantizer distortion and the cooperation
rate spent on the compression index.

All powers are linear. Interference variances may be +inf; every formula
downstream propagates the infinity (e.g. 1/INR2 -> 0).
"""
import math

import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dirty_mac_lab.errors import ParameterError

log = structlog.get_logger()

INF = math.inf

# Below this cooperation capacity the cooperation layer is dropped.
MIN_COOPERATION_CAPACITY = 0.5


def db_to_linear(value_db: float) -> float:
    """Converts a dB quantity to linear scale: 10^(dB/10)."""
    return 10.0 ** (value_db / 10.0)


class ChannelParams(BaseModel):
    """Validated parameters of the two-user doubly-dirty MAC."""

    model_config = ConfigDict(frozen=True)

    P1: float = Field(ge=0.0, description="Transmit power of user 1")
    P2: float = Field(ge=0.0, description="Transmit power of user 2")
    Q1: float = Field(ge=0.0, description="Variance of the interference known to Tx1")
    Q2: float = Field(ge=0.0, description="Variance of the interference known to Tx2")
    No: float = Field(gt=0.0, description="Receiver noise variance")
    Cb12: float = Field(default=0.0, ge=0.0, description="Cooperation capacity Tx1 -> Tx2")
    Cb21: float = Field(default=0.0, ge=0.0, description="Cooperation capacity Tx2 -> Tx1")
    swapped: bool = False

    @model_validator(mode="after")
    def _finite_where_required(self) -> "ChannelParams":
        for name in ("P1", "P2", "No", "Cb12", "Cb21"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        return self

    @property
    def snr1(self) -> float:
        return self.P1 / self.No

    @property
    def snr2(self) -> float:
        return self.P2 / self.No

    @property
    def inr1(self) -> float:
        return self.Q1 / self.No

    @property
    def inr2(self) -> float:
        return self.Q2 / self.No

    @property
    def is_normalized(self) -> bool:
        return self.P1 >= self.P2


class SchemeParams(BaseModel):
    """Derived quantities of the layered lattice scheme for one channel."""

    model_config = ConfigDict(frozen=True)

    thetaL: float = Field(ge=0.0, description="Lattice layer power (= P2)")
    thetaC: float = Field(ge=0.0, description="Cooperation layer power")
    thetaR: float = Field(ge=0.0, description="Relay layer power (= P1 - thetaC - P2)")
    alphaL: float = Field(ge=0.0, lt=1.0)
    alphaC: float = Field(ge=0.0, lt=1.0)
    delta: float = Field(ge=0.0, description="Quantizer distortion")
    r21: float = Field(ge=0.0, description="Cooperation rate spent on the compression index")

    @property
    def cooperation_active(self) -> bool:
        return self.thetaC > 0.0


def normalize(raw: ChannelParams) -> ChannelParams:
    """
    Relabels users so that user 1 is the stronger transmitter.

    Returns the params with users swapped (P, Q and Cb12 <-> Cb21 exchanged)
    and `swapped=True` when P1 < P2. Ties and already-normalized params are
    returned unchanged, so normalize is idempotent.
    """
    if raw.P1 >= raw.P2:
        return raw
    log.debug("Swapping user labels so that P1 >= P2", P1=raw.P1, P2=raw.P2)
    return raw.model_copy(
        update={
            "P1": raw.P2,
            "P2": raw.P1,
            "Q1": raw.Q2,
            "Q2": raw.Q1,
            "Cb12": raw.Cb21,
            "Cb21": raw.Cb12,
            "swapped": True,
        }
    )


def capacity_limited_power(p: ChannelParams) -> float:
    """Cooperation-layer power supported by Cb21: (No + 2P2)(2^(2 Cb21) - 2)."""
    exponent = 2.0 * p.Cb21
    if exponent >= 1000.0:
        return INF
    return (p.No + 2.0 * p.P2) * (2.0 ** exponent - 2.0)


def _require_normalized(p: ChannelParams) -> None:
    if not p.is_normalized:
        raise ParameterError(f"params must be normalized (P1 >= P2), got P1={p.P1}, P2={p.P2}")


def _scheme(p: ChannelParams, theta_c: float, r21: float) -> SchemeParams:
    base = p.No + 2.0 * p.P2
    theta_l = p.P2
    theta_r = max(p.P1 - theta_c - p.P2, 0.0)
    return SchemeParams(
        thetaL=theta_l,
        thetaC=theta_c,
        thetaR=theta_r,
        alphaL=2.0 * theta_l / (2.0 * theta_l + p.No),
        alphaC=theta_c / (theta_c + base),
        delta=theta_c * base / (theta_c + base),
        r21=r21,
    )


def no_cooperation_scheme(p: ChannelParams) -> SchemeParams:
    """Scheme without the cooperation layer: thetaC = r21 = 0, thetaR = P1 - P2."""
    _require_normalized(p)
    return _scheme(p, 0.0, 0.0)


def select_cooperation_power(p: ChannelParams) -> SchemeParams:
    """
    Chooses the cooperation-layer power and compression rate.

    With Cb21 >= 1/2:
        thetaC = min{(No + 2P2)(2^(2 Cb21) - 2), Q2, P1 - P2}
        r21    = (1/2) log2(2 + thetaC / (No + 2P2))
    otherwise the cooperation layer is dropped (thetaC = r21 = 0).
    """
    _require_normalized(p)
    if p.Cb21 < MIN_COOPERATION_CAPACITY:
        return _scheme(p, 0.0, 0.0)

    base = p.No + 2.0 * p.P2
    theta_c = min(capacity_limited_power(p), p.Q2, p.P1 - p.P2)
    # r21 equals Cb21 on the capacity-limited branch; clamp float round-off.
    r21 = min(0.5 * math.log2(2.0 + theta_c / base), p.Cb21)
    return _scheme(p, theta_c, r21)
