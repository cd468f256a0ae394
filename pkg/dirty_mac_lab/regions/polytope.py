"""
Two-dimensional rate regions.

A `RateRegion` is the intersection of half-planes a*R1 + b*R2 <= c with the
nonnegative quadrant. Right-hand sides may be +inf, in which case the
constraint is inactive but still reported.
"""
import math
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from dirty_mac_lab.errors import ParameterError, RegionError

RATE_TOL = 1e-9
_DET_EPS = 1e-12

Point = Tuple[float, float]


def cfun(x: float) -> float:
    """C(x) = (1/2) log2(1 + x); C(+inf) = +inf."""
    if math.isnan(x) or x < 0.0:
        raise ParameterError(f"C(x) is defined for x >= 0, got {x}")
    if math.isinf(x):
        return math.inf
    return 0.5 * math.log2(1.0 + x)


def log2_plus(x: float) -> float:
    """log2+(x) = max(0, log2(x)), with nonpositive arguments mapped to 0."""
    if x <= 1.0:
        return 0.0
    return math.log2(x)


def positive_part(x: float) -> float:
    return x if x > 0.0 else 0.0


class HalfPlane(BaseModel):
    """The constraint a*R1 + b*R2 <= c."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    label: str = ""

    @model_validator(mode="after")
    def _check(self) -> "HalfPlane":
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("half-plane coefficients must be finite")
        if self.a == 0.0 and self.b == 0.0:
            raise ValueError("half-plane needs a nonzero coefficient")
        if math.isnan(self.c) or self.c == -math.inf:
            raise ValueError(f"half-plane rhs must be a number or +inf, got {self.c}")
        return self

    @property
    def active(self) -> bool:
        return math.isfinite(self.c)

    def slack(self, pt: Point) -> float:
        """c - (a*R1 + b*R2); negative means violated."""
        return self.c - (self.a * pt[0] + self.b * pt[1])


class RateRegion(BaseModel):
    """Half-plane intersection over (R1, R2) with implicit R1, R2 >= 0."""

    model_config = ConfigDict(frozen=True)

    constraints: Tuple[HalfPlane, ...] = ()
    name: str = ""

    def bound(self, label: str) -> float:
        """Right-hand side of the constraint with the given label."""
        for hp in self.constraints:
            if hp.label == label:
                return hp.c
        raise KeyError(label)

    def tightest(self, a: float, b: float) -> float:
        """Smallest rhs among constraints with coefficients (a, b); +inf if none."""
        values = [hp.c for hp in self.constraints if hp.a == a and hp.b == b]
        return min(values, default=math.inf)

    @property
    def sum_rate_bound(self) -> float:
        return self.tightest(1.0, 1.0)

    @property
    def r2_bound(self) -> float:
        return self.tightest(0.0, 1.0)


def _lines(r: RateRegion) -> Tuple[np.ndarray, np.ndarray]:
    rows = [(hp.a, hp.b) for hp in r.constraints if hp.active]
    rhs = [hp.c for hp in r.constraints if hp.active]
    # Quadrant boundaries: -R1 <= 0, -R2 <= 0.
    rows += [(-1.0, 0.0), (0.0, -1.0)]
    rhs += [0.0, 0.0]
    return np.asarray(rows, dtype=float), np.asarray(rhs, dtype=float)


def _is_bounded(coeffs: np.ndarray) -> bool:
    candidates = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    for a, b in coeffs:
        direction = np.array([b, -a])
        candidates.extend([direction, -direction])
    for d in candidates:
        if np.all(d >= -_DET_EPS) and np.any(d > _DET_EPS) and np.all(coeffs @ d <= _DET_EPS):
            return False
    return True


def _ccw(points: List[Point]) -> List[Point]:
    if len(points) <= 2:
        return sorted(points)
    arr = np.asarray(points)
    centre = arr.mean(axis=0)
    angles = np.arctan2(arr[:, 1] - centre[1], arr[:, 0] - centre[0])
    ordered = [points[i] for i in np.argsort(angles, kind="stable")]
    start = ordered.index(min(ordered))
    return ordered[start:] + ordered[:start]


def vertices(r: RateRegion, tol: float = RATE_TOL) -> List[Point]:
    """
    Extreme points of the region, counterclockwise from the lexicographically
    smallest one, deduplicated within `tol`.

    Degenerate regions (a segment or a single point) are returned as their
    endpoints. Raises RegionError when the region is empty or unbounded.
    """
    coeffs, rhs = _lines(r)
    found: List[Point] = []
    for i, j in combinations(range(len(rhs)), 2):
        (ai, bi), (aj, bj) = coeffs[i], coeffs[j]
        det = ai * bj - aj * bi
        if abs(det) < _DET_EPS:
            continue
        x = (rhs[i] * bj - rhs[j] * bi) / det
        y = (ai * rhs[j] - aj * rhs[i]) / det
        if x < -tol or y < -tol:
            continue
        x, y = positive_part(float(x)), positive_part(float(y))
        if np.all(coeffs @ np.array([x, y]) <= rhs + tol):
            if not any(abs(x - u) <= tol and abs(y - v) <= tol for u, v in found):
                found.append((x, y))

    if not found:
        raise RegionError(f"region '{r.name}' is empty")
    if not _is_bounded(coeffs[:-2]):
        raise RegionError(f"region '{r.name}' is unbounded")
    return _ccw(found)


def violation(r: RateRegion, pt: Point) -> float:
    """Largest amount by which `pt` breaks a constraint or the quadrant (0 if inside)."""
    worst = max(0.0, -pt[0], -pt[1])
    for hp in r.constraints:
        if hp.active:
            worst = max(worst, -hp.slack(pt))
    return worst


def contains(r: RateRegion, pt: Point, tol: float = 0.0) -> bool:
    """True iff `pt` satisfies every constraint and nonnegativity within additive slack `tol`."""
    if tol < 0.0:
        raise ParameterError(f"tolerance must be nonnegative, got {tol}")
    return violation(r, pt) <= tol


def region_from_rows(rows: Sequence[Tuple[float, float, float]], name: str = "",
                     labels: Optional[Sequence[str]] = None) -> RateRegion:
    """Builds a region from (a, b, c) triples."""
    labels = labels or [""] * len(rows)
    return RateRegion(
        constraints=tuple(HalfPlane(a=a, b=b, c=c, label=lab) for (a, b, c), lab in zip(rows, labels)),
        name=name,
    )


def _json_number(x: float):
    return x if math.isfinite(x) else "inf"


def to_payload(r: RateRegion) -> dict:
    """JSON-ready form: {name, constraints: [{a, b, c, label}], vertices: [[r1, r2], ...]}."""
    return {
        "name": r.name,
        "constraints": [
            {"a": hp.a, "b": hp.b, "c": _json_number(hp.c), "label": hp.label} for hp in r.constraints
        ],
        "vertices": [[u, v] for u, v in vertices(r)],
    }
