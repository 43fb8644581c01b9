"""Numerical defaults shared by all modules."""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    division: float = 1e-14
    removable: float = 1e-12
    herglotz_sampling: float = 1e-9
    herglotz_moment: float = 1e-6
    toeplitz_eig: float = -1e-9
    weight_sum: float = 1e-12
    moment_bound: float = 1e-12
    contour_zero: float = 1e-10
    witness: float = 1e-6
    idempotent: float = 1e-10


DEFAULT_ORDER = 32
TOL = Tolerances()

# radii x angles used wherever a disk function is checked by sampling
SAMPLE_RADII = (0.3, 0.6, 0.9)
SAMPLE_ANGLES = 256

TWO_PI = 2.0 * np.pi


def working_order(default: int = DEFAULT_ORDER) -> int:
    """Truncation order, overridable through ``BCIRC_ORDER``."""
    value = os.environ.get("BCIRC_ORDER")
    if value is None or value.strip() == "":
        return default
    order = int(value)
    if order < 1:
        raise ValueError(f"BCIRC_ORDER must be positive, got {order}")
    return order


def sample_grid() -> np.ndarray:
    """The 3 x 256 complex sampling grid, flattened."""
    theta = TWO_PI * np.arange(SAMPLE_ANGLES) / SAMPLE_ANGLES
    return np.concatenate([r * np.exp(1j * theta) for r in SAMPLE_RADII])


def canonical_angle(b: float) -> float:
    """Reduce an angle into [0, 2pi)."""
    b = float(np.mod(b, TWO_PI))
    # np.mod can return exactly 2pi for tiny negative inputs
    return 0.0 if b >= TWO_PI else b
