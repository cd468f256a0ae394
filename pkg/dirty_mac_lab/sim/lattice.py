"""Scalar lattice q*Z with the half-open Voronoi cell [-q/2, q/2)."""
import math
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from dirty_mac_lab.errors import SimulationError

ArrayLike = Union[float, np.ndarray]


class ScalarLattice(BaseModel):
    model_config = ConfigDict(frozen=True)

    q: float = Field(ge=0.0, description="Cell width")

    @property
    def theta(self) -> float:
        """Second moment of the cell, q^2 / 12."""
        return self.q ** 2 / 12.0


def lattice_for_power(theta: float) -> ScalarLattice:
    """Lattice whose second moment equals `theta`."""
    if not theta >= 0.0 or math.isinf(theta):
        raise SimulationError(f"lattice power must be finite and >= 0, got {theta}")
    return ScalarLattice(q=math.sqrt(12.0 * theta))


def mod_lattice(x: ArrayLike, lat: ScalarLattice) -> ArrayLike:
    """x - q*floor(x/q + 1/2), folded into [-q/2, q/2). A zero-width lattice maps everything to 0."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise SimulationError("mod_lattice needs finite input")
    q = lat.q
    if q == 0.0:
        out = np.zeros_like(arr)
    else:
        out = arr - q * np.floor(arr / q + 0.5)
        half = 0.5 * q
        # Rounding in the division can leave a value one cell off the half-open interval.
        out = np.where(out >= half, out - q, out)
        out = np.where(out < -half, out + q, out)
    if np.ndim(x) == 0:
        return float(out)
    return out


def uniform_on_cell(unit: np.ndarray, lat: ScalarLattice) -> np.ndarray:
    """Maps uniform samples on [0, 1) onto the cell."""
    return (unit - 0.5) * lat.q
