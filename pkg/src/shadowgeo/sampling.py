"""Deterministic point generators: Fibonacci sphere grids and seeded samplers."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@lru_cache(maxsize=16)
def _fibonacci_cached(n: int) -> np.ndarray:
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * GOLDEN_ANGLE
    pts = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    pts.setflags(write=False)
    return pts


def fibonacci_sphere(n: int) -> np.ndarray:
    """n near-uniform points on S^2, deterministic in n (read-only array)."""
    if n < 1:
        raise ValueError("need at least one grid point")
    return _fibonacci_cached(int(n))


def sample_sphere(n: int, seed: int, dim: int = 3) -> np.ndarray:
    """n uniform points on the unit sphere in R^dim, seeded."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, dim))
    norms = np.linalg.norm(v, axis=1)
    bad = norms < 1e-12
    while bad.any():
        v[bad] = rng.standard_normal((int(bad.sum()), dim))
        norms = np.linalg.norm(v, axis=1)
        bad = norms < 1e-12
    return v / norms[:, None]
