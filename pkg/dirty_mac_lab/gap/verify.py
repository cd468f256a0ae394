"""
Constant-gap verification between the outer and inner bounds.

A pair (outer, inner) is "within (g1, g2) bits" when every vertex of the outer
region, moved down by g1 in R1 and g2 in R2 and clamped at zero, lies in the
inner region. Alongside that check the per-constraint gaps (sum rate and R2)
are measured and compared with the analytic bound that holds for the active
branch of the cooperation-power rule.
"""
import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

import structlog
from pydantic import BaseModel, ConfigDict

from dirty_mac_lab.channel.params import (
    MIN_COOPERATION_CAPACITY,
    ChannelParams,
    SchemeParams,
    capacity_limited_power,
    normalize,
    select_cooperation_power,
)
from dirty_mac_lab.errors import ParameterError
from dirty_mac_lab.regions.bounds import (
    SUM_CUTSET,
    SUM_INTERFERENCE,
    inner_coop,
    inner_no_coop,
    outer_coop,
    outer_no_coop,
)
from dirty_mac_lab.regions.polytope import RATE_TOL, RateRegion, positive_part, vertices, violation

log = structlog.get_logger()

NO_COOP_GAP = (1.0, 0.5)
COOP_GAP = (3.0, 1.5)


class GapCase(str, Enum):
    NO_COOPERATION = "NO_COOPERATION"
    CB_SMALL = "CB_SMALL"
    THETA_CAPACITY_LIMITED = "THETA_CAPACITY_LIMITED"
    THETA_Q2_LIMITED = "THETA_Q2_LIMITED"
    THETA_POWER_LIMITED = "THETA_POWER_LIMITED"


# (sum-rate gap bound, R2 gap bound) per case.
_ANALYTIC_BOUNDS: Dict[GapCase, Tuple[float, float]] = {
    GapCase.NO_COOPERATION: (1.0, 0.5),
    GapCase.CB_SMALL: (2.0, 0.5),
    GapCase.THETA_CAPACITY_LIMITED: (3.0, 1.5),
    GapCase.THETA_Q2_LIMITED: (3.0, 1.5),
    GapCase.THETA_POWER_LIMITED: (1.5, 1.5),
}

# Outer-bound sum rates with cooperation exceed those without by at most this
# much (plus Cb21 for the interference-limited bound).
COOPERATION_SUM_GAIN = 0.5


def shrink_check(outer: RateRegion, inner: RateRegion, g1: float, g2: float,
                 tol: float = RATE_TOL) -> Tuple[bool, float]:
    """Checks ((v1 - g1)+, (v2 - g2)+) in `inner` for every outer vertex; returns (passed, worst violation)."""
    worst = 0.0
    for v1, v2 in vertices(outer):
        shrunk = (positive_part(v1 - g1), positive_part(v2 - g2))
        worst = max(worst, violation(inner, shrunk))
    return worst <= tol, worst


def classify_case(p: ChannelParams, s: SchemeParams) -> GapCase:
    """Active branch of the cooperation-power rule; ties go capacity, then Q2, then power."""
    if p.Cb21 < MIN_COOPERATION_CAPACITY:
        return GapCase.CB_SMALL
    if s.thetaC == capacity_limited_power(p):
        return GapCase.THETA_CAPACITY_LIMITED
    if s.thetaC == p.Q2:
        return GapCase.THETA_Q2_LIMITED
    return GapCase.THETA_POWER_LIMITED


def analytic_gap_bounds(case: GapCase, p: Optional[ChannelParams] = None,
                        s: Optional[SchemeParams] = None) -> Tuple[float, float]:
    """Returns (sum-rate gap bound, R2 gap bound) in bits for the case."""
    try:
        return _ANALYTIC_BOUNDS[GapCase(case)]
    except (KeyError, ValueError):
        raise ParameterError(f"unknown gap case: {case!r}") from None


def measured_gaps(outer: RateRegion, inner: RateRegion) -> Tuple[float, float]:
    """(tightest outer sum bound - inner sum bound, outer R2 bound - inner R2 bound)."""
    return outer.sum_rate_bound - inner.sum_rate_bound, outer.r2_bound - inner.r2_bound


def corner_points(r: RateRegion) -> Dict[str, List[float]]:
    """Vertex of maximum sum rate (largest R2 on ties) and of maximum R2 (largest R1 on ties)."""
    pts = vertices(r)
    max_sum = max(pts, key=lambda v: (round(v[0] + v[1], 12), v[1]))
    max_r2 = max(pts, key=lambda v: (round(v[1], 12), v[0]))
    return {"max_sum": list(max_sum), "max_r2": list(max_r2)}


class TheoremCheck(BaseModel):
    """Outcome of one (outer, inner, g1, g2) comparison."""

    model_config = ConfigDict(frozen=True)

    g1: float
    g2: float
    passed_shrink: bool
    worst_violation: float
    sum_gap: float
    r2_gap: float
    sum_gap_bound: float
    r2_gap_bound: float

    @property
    def gaps_within_bounds(self) -> bool:
        return (self.sum_gap <= self.sum_gap_bound + RATE_TOL
                and self.r2_gap <= self.r2_gap_bound + RATE_TOL)

    @property
    def passed(self) -> bool:
        return self.passed_shrink and self.gaps_within_bounds


class GapReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: ChannelParams
    scheme: SchemeParams
    regions: Dict[str, RateRegion]
    no_coop: TheoremCheck
    coop: TheoremCheck
    gap_case: GapCase
    cooperation_gain_cutset: float
    cooperation_gain_interference: float
    corners: Dict[str, Dict[str, List[float]]]

    @property
    def g1_required(self) -> float:
        return self.coop.g1

    @property
    def g2_required(self) -> float:
        return self.coop.g2

    @property
    def worst_violation(self) -> float:
        return max(self.no_coop.worst_violation, self.coop.worst_violation)

    @property
    def analytic_sum_gap_bound(self) -> float:
        return self.coop.sum_gap_bound

    @property
    def analytic_r2_gap_bound(self) -> float:
        return self.coop.r2_gap_bound

    @property
    def cooperation_gain_ok(self) -> bool:
        return (self.cooperation_gain_cutset <= COOPERATION_SUM_GAIN + RATE_TOL
                and self.cooperation_gain_interference <= COOPERATION_SUM_GAIN + self.params.Cb21 + RATE_TOL)

    @property
    def passed(self) -> bool:
        return self.no_coop.passed and self.coop.passed

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "gap_case": self.gap_case.value,
            "worst_violation": self.worst_violation,
            "g1_required": self.g1_required,
            "g2_required": self.g2_required,
            "analytic_sum_gap_bound": self.analytic_sum_gap_bound,
            "analytic_r2_gap_bound": self.analytic_r2_gap_bound,
            "theorem_no_coop": {**self.no_coop.model_dump(), "passed": self.no_coop.passed},
            "theorem_coop": {**self.coop.model_dump(), "passed": self.coop.passed},
            "cooperation_gain": {
                "cutset": self.cooperation_gain_cutset,
                "interference": self.cooperation_gain_interference,
                "ok": self.cooperation_gain_ok,
            },
            "corners": self.corners,
        }

    def to_row(self) -> dict:
        """Flat record for one sweep point."""
        p, s = self.params, self.scheme
        row = {
            "P1": p.P1, "P2": p.P2, "Q1": p.Q1, "Q2": p.Q2, "No": p.No,
            "Cb12": p.Cb12, "Cb21": p.Cb21, "swapped": p.swapped,
            "thetaC": s.thetaC, "thetaR": s.thetaR, "r21": s.r21,
        }
        for name, region in self.regions.items():
            for hp in region.constraints:
                row[f"{name}.{hp.label}"] = hp.c
        row.update({
            "gap_case": self.gap_case.value,
            "no_coop_passed": self.no_coop.passed,
            "no_coop_worst_violation": self.no_coop.worst_violation,
            "no_coop_sum_gap": self.no_coop.sum_gap,
            "no_coop_r2_gap": self.no_coop.r2_gap,
            "coop_passed": self.coop.passed,
            "coop_worst_violation": self.coop.worst_violation,
            "coop_sum_gap": self.coop.sum_gap,
            "coop_r2_gap": self.coop.r2_gap,
            "analytic_sum_gap_bound": self.coop.sum_gap_bound,
            "analytic_r2_gap_bound": self.coop.r2_gap_bound,
            "cooperation_gain_ok": self.cooperation_gain_ok,
            "passed": self.passed,
        })
        return row


def _gain(coop_bound: float, no_coop_bound: float) -> float:
    if math.isinf(coop_bound) and math.isinf(no_coop_bound):
        return 0.0
    return coop_bound - no_coop_bound


def _check(outer: RateRegion, inner: RateRegion, gap: Tuple[float, float],
           bounds: Tuple[float, float], tol: float) -> TheoremCheck:
    passed, worst = shrink_check(outer, inner, gap[0], gap[1], tol)
    sum_gap, r2_gap = measured_gaps(outer, inner)
    return TheoremCheck(
        g1=gap[0], g2=gap[1], passed_shrink=passed, worst_violation=worst,
        sum_gap=sum_gap, r2_gap=r2_gap, sum_gap_bound=bounds[0], r2_gap_bound=bounds[1],
    )


def verify_theorems(p: ChannelParams, tol: float = RATE_TOL) -> GapReport:
    """
    Runs both constant-gap checks for one channel and attaches the case analysis.

    Args:
        p: Channel in any labelling; it is normalized first.
        tol: Slack allowed in the shrink check, in bits.

    Returns:
        A GapReport holding the four regions, both checks and the active case.
    """
    p = normalize(p)
    s = select_cooperation_power(p)
    regions = {
        "outer_no_coop": outer_no_coop(p),
        "inner_no_coop": inner_no_coop(p),
        "outer_coop": outer_coop(p),
        "inner_coop": inner_coop(p, s),
    }
    case = classify_case(p, s)

    no_coop = _check(regions["outer_no_coop"], regions["inner_no_coop"], NO_COOP_GAP,
                     analytic_gap_bounds(GapCase.NO_COOPERATION), tol)
    coop = _check(regions["outer_coop"], regions["inner_coop"], COOP_GAP,
                  analytic_gap_bounds(case, p, s), tol)

    report = GapReport(
        params=p,
        scheme=s,
        regions=regions,
        no_coop=no_coop,
        coop=coop,
        gap_case=case,
        cooperation_gain_cutset=_gain(regions["outer_coop"].bound(SUM_CUTSET),
                                      regions["outer_no_coop"].bound(SUM_CUTSET)),
        cooperation_gain_interference=_gain(regions["outer_coop"].bound(SUM_INTERFERENCE),
                                            regions["outer_no_coop"].bound(SUM_INTERFERENCE)),
        corners={name: corner_points(region) for name, region in regions.items()},
    )
    if not report.passed:
        log.warning("Constant-gap check failed", case=case.value,
                    worst_violation=report.worst_violation, P1=p.P1, P2=p.P2, Q2=p.Q2, Cb21=p.Cb21)
    return report
