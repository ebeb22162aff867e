"""Versioned sampling grids shared by the membership and flow checks.

Every default grid is a named, frozen constant so that reported verdicts and
witnesses are reproducible across runs and machines.  The registry below is
printed by ``siegelflow --help``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

HALFPLANE_GRID_V1 = "halfplane-grid-v1"
SIEGEL_GRID_V1 = "siegel-grid-v1"
SIEGEL_GRID_SMALL_V1 = "siegel-grid-small-v1"
HOROSPHERE_SAMPLES_V1 = "horosphere-samples-v1"

GRID_DESCRIPTIONS = {
    HALFPLANE_GRID_V1: (
        "half-plane rectangle: x in +-logspace(-2,2) with 0 (64 values), "
        "y in logspace(-2,4,64)"
    ),
    SIEGEL_GRID_V1: (
        "Siegel grid, n=2: x in {0,+-logspace(-2,2,10)}, y in logspace(-2,4,16), "
        "z~ radius fractions {0,.25,.5,.75,.95} of sqrt(y), phases {1,i,-1,-i}"
    ),
    SIEGEL_GRID_SMALL_V1: (
        "reduced Siegel grid used by the verify suites: x in {0,+-0.1,+-10}, "
        "y in logspace(-1,3,6), fractions {0,.5,.9}, phases {1,i}"
    ),
    HOROSPHERE_SAMPLES_V1: (
        "64 points with |u| = 1: phi_gamma(x + i) for 16 gammas and "
        "x in {-2,-0.5,0.5,2}"
    ),
}


@lru_cache(maxsize=None)
def halfplane_grid() -> np.ndarray:
    """Flat array of half-plane points, shape (4096, 1)."""
    xs = np.concatenate(
        [
            -np.logspace(2.0, -2.0, 32),
            [0.0],
            np.logspace(-2.0, 2.0, 31),
        ]
    )
    ys = np.logspace(-2.0, 4.0, 64)
    x_mesh, y_mesh = np.meshgrid(xs, ys, indexing="ij")
    points = (x_mesh + 1j * y_mesh).ravel()
    return points[:, None]


def _siegel_points(xs, ys, fractions, phases, n):
    points = []
    axes = range(n - 1)
    for x in xs:
        for y in ys:
            z1 = x + 1j * y
            base = np.zeros(n, dtype=complex)
            base[0] = z1
            points.append(base)
            radius = np.sqrt(y)
            for fraction in fractions:
                for phase in phases:
                    for axis in axes:
                        entry = np.zeros(n, dtype=complex)
                        entry[0] = z1
                        entry[1 + axis] = fraction * radius * phase
                        points.append(entry)
    return np.array(points, dtype=complex)


@lru_cache(maxsize=None)
def siegel_grid(n: int = 2) -> np.ndarray:
    """Default Siegel sampling grid, shape (count, n)."""
    exponents = np.linspace(-2.0, 2.0, 10)
    xs = np.concatenate([[0.0], 10.0**exponents, -(10.0**exponents)])
    ys = np.logspace(-2.0, 4.0, 16)
    fractions = (0.25, 0.5, 0.75, 0.95)
    phases = (1.0, 1j, -1.0, -1j)
    return _siegel_points(xs, ys, fractions, phases, n)


@lru_cache(maxsize=None)
def siegel_grid_small(n: int = 2) -> np.ndarray:
    xs = (0.0, 0.1, -0.1, 10.0, -10.0)
    ys = np.logspace(-1.0, 3.0, 6)
    fractions = (0.5, 0.9)
    phases = (1.0, 1j)
    return _siegel_points(xs, ys, fractions, phases, n)


@lru_cache(maxsize=None)
def horosphere_samples(n: int = 2) -> np.ndarray:
    """Points with |u| = 1 exactly: phi_gamma(x + i), shape (64, n)."""
    magnitudes = (0.5, 1.0, 2.0)
    phases = (1.0, 1j, -1.0, -1j)
    gammas = [np.zeros(n - 1, dtype=complex)]
    for magnitude in magnitudes:
        for phase in phases:
            gamma = np.zeros(n - 1, dtype=complex)
            if n > 1:
                gamma[0] = magnitude * phase
            gammas.append(gamma)
    extra = [0.5 + 0.5j, 1.0 + 1.0j, 1.0 - 1.0j]
    for value in extra:
        gamma = np.zeros(n - 1, dtype=complex)
        if n > 1:
            gamma[0] = value
        gammas.append(gamma)
    xs = (-2.0, -0.5, 0.5, 2.0)
    points = []
    for gamma in gammas:
        norm_sq = float(np.sum(np.abs(gamma) ** 2))
        for x in xs:
            entry = np.zeros(n, dtype=complex)
            entry[0] = x + 1j * (1.0 + norm_sq)
            entry[1:] = gamma
            points.append(entry)
    return np.array(points, dtype=complex)


def siegel_grid_by_name(name: str, n: int = 2) -> np.ndarray:
    if name in ("default", SIEGEL_GRID_V1):
        return siegel_grid(n)
    if name in ("small", SIEGEL_GRID_SMALL_V1):
        return siegel_grid_small(n)
    raise KeyError(f"unknown Siegel grid {name!r}")
