"""
Parameter sweeps for the constant-gap checks.

Points are drawn up front from one seeded generator, so the list of channels
depends only on (ranges, count, seed). Evaluation may be spread over worker
processes; results always come back in input order.
"""
import concurrent.futures
import math
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dirty_mac_lab.channel.params import ChannelParams
from dirty_mac_lab.gap.verify import GapReport, verify_theorems
from dirty_mac_lab.regions.polytope import RATE_TOL

log = structlog.get_logger()


class SweepRanges(BaseModel):
    """SNR/INR are log-uniform; Cb21 is uniform, mixed with point masses at `cb21_atoms`."""

    model_config = ConfigDict(frozen=True)

    snr_min: float = Field(default=1e-3, gt=0.0)
    snr_max: float = Field(default=1e6, gt=0.0)
    inr_min: float = Field(default=1e-3, gt=0.0)
    inr_max: float = Field(default=1e6, gt=0.0)
    cb21_min: float = Field(default=0.0, ge=0.0)
    cb21_max: float = Field(default=8.0, ge=0.0)
    cb21_atoms: Tuple[float, ...] = (0.0, 0.5)
    atom_probability: float = Field(default=0.1, ge=0.0, le=1.0)
    no: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _ordered(self) -> "SweepRanges":
        for lo, hi in ((self.snr_min, self.snr_max), (self.inr_min, self.inr_max),
                       (self.cb21_min, self.cb21_max)):
            if lo > hi:
                raise ValueError(f"empty range [{lo}, {hi}]")
        if any(atom < 0.0 for atom in self.cb21_atoms):
            raise ValueError("cooperation capacity atoms must be nonnegative")
        return self

    @classmethod
    def without_cooperation(cls, **overrides) -> "SweepRanges":
        return cls(cb21_min=0.0, cb21_max=0.0, cb21_atoms=(), atom_probability=0.0, **overrides)


def sample_sweep(ranges: SweepRanges, count: int, seed: int) -> List[ChannelParams]:
    """
    Draws `count` channels already in normalized order (SNR1 >= SNR2).

    Each SNR pair is sorted descending; INR1 and INR2 are drawn independently
    of that order. Cb12 stays 0, so `normalize` never moves a Cb21 draw.

    Args:
        ranges: Sampling ranges for SNR, INR and Cb21.
        count: Number of channels, at least 1.
        seed: Seed of the single generator every draw comes from.

    Returns:
        The channels, in draw order.
    """
    if count < 1:
        raise ValueError(f"sweep count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    snr = 10.0 ** rng.uniform(math.log10(ranges.snr_min), math.log10(ranges.snr_max), size=(count, 2))
    snr = -np.sort(-snr, axis=1)
    inr = 10.0 ** rng.uniform(math.log10(ranges.inr_min), math.log10(ranges.inr_max), size=(count, 2))
    cb21 = rng.uniform(ranges.cb21_min, ranges.cb21_max, size=count)
    use_atom = rng.random(count) < ranges.atom_probability
    if ranges.cb21_atoms:
        atoms = np.asarray(ranges.cb21_atoms)[rng.integers(0, len(ranges.cb21_atoms), size=count)]
        cb21 = np.where(use_atom, atoms, cb21)

    no = ranges.no
    return [
        ChannelParams(
            P1=float(snr[k, 0] * no), P2=float(snr[k, 1] * no),
            Q1=float(inr[k, 0] * no), Q2=float(inr[k, 1] * no),
            No=no, Cb21=float(cb21[k]),
        )
        for k in range(count)
    ]


def run_sweep(points: Sequence[ChannelParams], jobs: int = 1) -> List[GapReport]:
    """Verifies every point; `jobs > 1` fans out over processes, preserving order."""
    if jobs <= 1:
        return [verify_theorems(p) for p in points]
    chunksize = max(1, len(points) // (4 * jobs))
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(verify_theorems, points, chunksize=chunksize))


def reports_frame(reports: Sequence[GapReport]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in reports])


def summarize(reports: Sequence[GapReport]) -> dict:
    """Counts failures and records the largest measured gaps per case."""
    frame = reports_frame(reports)
    worst = [r.worst_violation for r in reports]
    failures = int((~frame["passed"]).sum())
    per_case = (
        frame.groupby("gap_case")[["coop_sum_gap", "coop_r2_gap"]].max()
        .rename(columns={"coop_sum_gap": "max_sum_gap", "coop_r2_gap": "max_r2_gap"})
    )
    summary = {
        "count": len(reports),
        "violations": failures,
        "max_violation": max(worst) if worst else 0.0,
        "theorem_no_coop_failures": int((~frame["no_coop_passed"]).sum()),
        "theorem_coop_failures": int((~frame["coop_passed"]).sum()),
        "cooperation_gain_failures": int((~frame["cooperation_gain_ok"]).sum()),
        "max_no_coop_sum_gap": float(frame["no_coop_sum_gap"].max()),
        "max_no_coop_r2_gap": float(frame["no_coop_r2_gap"].max()),
        "case_counts": {k: int(v) for k, v in frame["gap_case"].value_counts().sort_index().items()},
        "case_max_gaps": {
            case: {k: float(v) for k, v in row.items()} for case, row in per_case.iterrows()
        },
        "passed": failures == 0 and (max(worst) if worst else 0.0) <= RATE_TOL,
    }
    log.info("Sweep finished", count=summary["count"], violations=failures,
             max_violation=summary["max_violation"])
    return summary
