"""
Linear inequality systems over named nonnegative variables, and their
projection by Fourier-Motzkin elimination.

Every variable carries an implicit `var >= 0`. Equalities are stored as a
pair of opposite inequalities.
"""
import math
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from dirty_mac_lab.errors import ParameterError, RegionError
from dirty_mac_lab.regions.polytope import HalfPlane, RateRegion

log = structlog.get_logger()

SIGN_EPS = 1e-12
IMPLIED_TOL = 1e-9

Row = Tuple[Tuple[float, ...], float]


class LinearSystem(BaseModel):
    """Rows (coeffs, rhs) encoding coeffs . vars <= rhs."""

    model_config = ConfigDict(frozen=True)

    varnames: Tuple[str, ...]
    rows: Tuple[Row, ...] = ()

    @model_validator(mode="after")
    def _check(self) -> "LinearSystem":
        if len(set(self.varnames)) != len(self.varnames):
            raise ValueError(f"duplicate variable names in {self.varnames}")
        for coeffs, rhs in self.rows:
            if len(coeffs) != len(self.varnames):
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {len(self.varnames)}")
            if not all(math.isfinite(c) for c in coeffs):
                raise ValueError("row coefficients must be finite")
            if math.isnan(rhs) or rhs == -math.inf:
                raise ValueError(f"row rhs must be a number or +inf, got {rhs}")
        return self

    def matrix(self) -> Tuple[np.ndarray, np.ndarray]:
        if not self.rows:
            return np.zeros((0, len(self.varnames))), np.zeros(0)
        coeffs = np.array([row[0] for row in self.rows], dtype=float)
        rhs = np.array([row[1] for row in self.rows], dtype=float)
        return coeffs, rhs

    def is_satisfied(self, values: Mapping[str, float], tol: float = IMPLIED_TOL) -> bool:
        """True iff the assignment is nonnegative and meets every row within `tol`."""
        x = np.array([values[name] for name in self.varnames], dtype=float)
        if np.any(x < -tol):
            return False
        coeffs, rhs = self.matrix()
        return bool(np.all(coeffs @ x <= rhs + tol))

    def to_region(self, r1: str = "R1", r2: str = "R2", name: str = "") -> RateRegion:
        """Reads a system over exactly {r1, r2} as a rate region."""
        if set(self.varnames) != {r1, r2}:
            raise ParameterError(f"system over {self.varnames} is not a ({r1}, {r2}) region")
        i, j = self.varnames.index(r1), self.varnames.index(r2)
        constraints: List[HalfPlane] = []
        for coeffs, rhs in self.rows:
            a, b = coeffs[i], coeffs[j]
            if abs(a) <= SIGN_EPS and abs(b) <= SIGN_EPS:
                if rhs < -IMPLIED_TOL:
                    raise RegionError(f"system is infeasible: 0 <= {rhs}")
                continue
            constraints.append(HalfPlane(a=a, b=b, c=rhs))
        return RateRegion(constraints=tuple(constraints), name=name)

    def to_payload(self) -> dict:
        return {
            "varnames": list(self.varnames),
            "rows": [
                {"coeffs": list(coeffs), "rhs": rhs if math.isfinite(rhs) else "inf"}
                for coeffs, rhs in self.rows
            ],
        }


def system_from_dicts(varnames: Sequence[str], rows: Iterable[Tuple[Dict[str, float], float]]) -> LinearSystem:
    """Builds a system from sparse rows {var: coeff} <= rhs."""
    index = {name: k for k, name in enumerate(varnames)}
    dense: List[Row] = []
    for sparse, rhs in rows:
        coeffs = [0.0] * len(varnames)
        for name, value in sparse.items():
            coeffs[index[name]] = float(value)
        dense.append((tuple(coeffs), float(rhs)))
    return LinearSystem(varnames=tuple(varnames), rows=tuple(dense))


def _normalize_rows(coeffs: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    scale = np.abs(coeffs).max(axis=1) if coeffs.size else np.zeros(len(rhs))
    scale = np.where(scale > SIGN_EPS, scale, 1.0)
    coeffs = coeffs / scale[:, None]
    coeffs[np.abs(coeffs) <= SIGN_EPS] = 0.0
    return coeffs, rhs / scale


def _drop_trivial(coeffs: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # Rows with no positive coefficient and rhs >= 0 hold for every x >= 0.
    trivial = np.all(coeffs <= SIGN_EPS, axis=1) & (rhs >= -IMPLIED_TOL)
    return coeffs[~trivial], rhs[~trivial]


def _implication_matrix(coeffs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """implied[r, s] is True when row s implies row r for every x >= 0."""
    m = len(rhs)
    if m == 0:
        return np.zeros((0, 0), dtype=bool)
    cr = coeffs[:, None, :]
    cs = coeffs[None, :, :]
    pos = np.broadcast_to(cs > SIGN_EPS, (m, m, coeffs.shape[1]))
    neg = np.broadcast_to(cs < -SIGN_EPS, (m, m, coeffs.shape[1]))
    zero = ~(pos | neg)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(pos | neg, cr / np.where(pos | neg, cs, 1.0), 0.0)

    lam_lo = np.maximum(np.where(pos, ratio, -np.inf).max(axis=2), 0.0)
    lam_hi = np.where(neg, ratio, np.inf).min(axis=2)
    zero_ok = np.all(~zero | (np.broadcast_to(cr, (m, m, coeffs.shape[1])) <= SIGN_EPS), axis=2)

    ds = rhs[None, :]
    dr = rhs[:, None]
    lam = np.where(ds >= 0.0, lam_lo, lam_hi)
    with np.errstate(invalid="ignore"):
        rhs_ok = np.isfinite(lam) & (lam * ds <= dr + IMPLIED_TOL)
    implied = zero_ok & (lam_lo <= lam_hi + SIGN_EPS) & rhs_ok
    np.fill_diagonal(implied, False)
    return implied


def remove_redundant(coeffs: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Drops rows dominated by another kept row; of two equivalent rows the first stays."""
    m = len(rhs)
    if coeffs.shape[1] == 0:
        return coeffs[:1], rhs[:1]
    implied = _implication_matrix(coeffs, rhs)
    dropped = np.zeros(m, dtype=bool)
    for r in range(m):
        for s in range(m):
            if s == r or dropped[s] or not implied[r, s]:
                continue
            if not implied[s, r] or s < r:
                dropped[r] = True
                break
    return coeffs[~dropped], rhs[~dropped]


def _eliminate_column(coeffs: np.ndarray, rhs: np.ndarray, j: int) -> Tuple[np.ndarray, np.ndarray]:
    col = coeffs[:, j]
    pos = np.flatnonzero(col > SIGN_EPS)
    neg = np.flatnonzero(col < -SIGN_EPS)
    zero = np.flatnonzero(np.abs(col) <= SIGN_EPS)

    # x_j >= 0 joins the negative set as -x_j <= 0.
    nonneg = np.zeros(coeffs.shape[1])
    nonneg[j] = -1.0
    neg_coeffs = np.vstack([coeffs[neg], nonneg])
    neg_rhs = np.append(rhs[neg], 0.0)

    new_coeffs = [coeffs[zero]]
    new_rhs = [rhs[zero]]
    if len(pos):
        p_scale = col[pos][:, None]
        n_scale = -neg_coeffs[:, j][:, None]
        p_rows = coeffs[pos] / p_scale
        p_rhs = rhs[pos] / p_scale[:, 0]
        n_rows = neg_coeffs / n_scale
        n_rhs = neg_rhs / n_scale[:, 0]
        combined = (p_rows[:, None, :] + n_rows[None, :, :]).reshape(-1, coeffs.shape[1])
        combined_rhs = (p_rhs[:, None] + n_rhs[None, :]).reshape(-1)
        new_coeffs.append(combined)
        new_rhs.append(combined_rhs)

    out = np.vstack(new_coeffs)
    out_rhs = np.concatenate(new_rhs)
    out[:, j] = 0.0
    return np.delete(out, j, axis=1), out_rhs


def fme_eliminate(sys: LinearSystem, keep: Sequence[str]) -> LinearSystem:
    """
    Projects `sys` onto the variables in `keep`.

    Variables are eliminated one at a time in lexicographic order. After each
    step rows are rescaled to unit max-coefficient, rows implied by
    nonnegativity alone are dropped, and dominated rows are removed.

    Args:
        sys: System over nonnegative variables; rows with rhs = +inf are ignored.
        keep: Names of the variables to project onto.

    Returns:
        A system over `keep` (in the order of `sys.varnames`), or `sys` itself
        when nothing is eliminated.

    Raises:
        ParameterError: if `keep` names a variable not in `sys`.
    """
    unknown = set(keep) - set(sys.varnames)
    if unknown:
        raise ParameterError(f"cannot keep unknown variables {sorted(unknown)}")
    to_eliminate = sorted(name for name in sys.varnames if name not in set(keep))
    if not to_eliminate:
        return sys

    coeffs, rhs = sys.matrix()
    finite = np.isfinite(rhs)
    coeffs, rhs = coeffs[finite], rhs[finite]
    names = list(sys.varnames)

    for var in to_eliminate:
        j = names.index(var)
        coeffs, rhs = _eliminate_column(coeffs, rhs, j)
        names.pop(j)
        coeffs, rhs = _normalize_rows(coeffs, rhs)
        coeffs, rhs = _drop_trivial(coeffs, rhs)
        coeffs, rhs = remove_redundant(coeffs, rhs)
        log.debug("Eliminated variable", variable=var, rows=len(rhs))

    rows = tuple((tuple(float(c) for c in row), float(d)) for row, d in zip(coeffs, rhs))
    return LinearSystem(varnames=tuple(names), rows=rows)
