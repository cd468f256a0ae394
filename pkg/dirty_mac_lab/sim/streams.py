"""
Seeded random substreams.

Every (layer, role, batch) triple gets its own Philox generator derived from
the run seed, so a signal can be regenerated bit-for-bit independently of the
others. Two runs that differ only in interference power therefore share all
other randomness.
"""
from typing import Callable

import numpy as np

BATCH_SIZE = 1 << 18

LAYER_CODES = {"channel": 0, "L": 1, "C": 2, "R": 3, "claim1": 4}
ROLE_CODES = {
    "v1": 1, "v2": 2, "d1": 3, "d2": 4,
    "s1": 5, "s2": 6, "z": 7, "zhat": 8, "x1": 9,
    "x": 10, "s": 11,
    "z_gaussian": 12, "z_uniform": 13, "z_laplace": 14,
}


def substream(seed: int, layer: str, role: str, batch: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(LAYER_CODES[layer], ROLE_CODES[role], batch))
    return np.random.Generator(np.random.Philox(ss))


def _draw(seed: int, layer: str, role: str, n: int,
          sample: Callable[[np.random.Generator, int], np.ndarray]) -> np.ndarray:
    chunks = []
    for batch, start in enumerate(range(0, n, BATCH_SIZE)):
        size = min(BATCH_SIZE, n - start)
        chunks.append(sample(substream(seed, layer, role, batch), size))
    return np.concatenate(chunks) if chunks else np.zeros(0)


def standard_normal(seed: int, layer: str, role: str, n: int) -> np.ndarray:
    return _draw(seed, layer, role, n, lambda g, size: g.standard_normal(size))


def unit_uniform(seed: int, layer: str, role: str, n: int) -> np.ndarray:
    """Uniform on [0, 1)."""
    return _draw(seed, layer, role, n, lambda g, size: g.random(size))


def standard_laplace(seed: int, layer: str, role: str, n: int) -> np.ndarray:
    """Laplace with unit scale (variance 2)."""
    return _draw(seed, layer, role, n, lambda g, size: g.laplace(0.0, 1.0, size))
