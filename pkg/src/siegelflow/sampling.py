"""Seeded random samplers shared by the verification suites and the tests.

All samplers take an explicit numpy Generator so callers control
reproducibility; nothing here touches global random state.
"""

from __future__ import annotations

import numpy as np

from .domains import INTERIOR_MARGIN


def disc_coords(rng: np.random.Generator, count: int, radius: float = 0.95) -> np.ndarray:
    """Uniform points in the disc of the given radius, shape (count, 1)."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    theta = rng.uniform(0.0, 2.0 * np.pi, count)
    return (r * np.exp(1j * theta))[:, None]


def halfplane_coords(
    rng: np.random.Generator,
    count: int,
    log_im: tuple[float, float] = (-2.0, 2.0),
    re_scale: float = 10.0,
) -> np.ndarray:
    """Points x + iy with log-uniform y and uniform x, shape (count, 1)."""
    y = 10.0 ** rng.uniform(*log_im, count)
    x = rng.uniform(-re_scale, re_scale, count)
    return (x + 1j * y)[:, None]


def ball_coords(rng: np.random.Generator, count: int, n: int, radius: float = 0.9) -> np.ndarray:
    """Points in the ball of the given radius in C^n, shape (count, n)."""
    raw = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    norms = np.linalg.norm(raw, axis=-1, keepdims=True)
    # Uniform-in-volume radial law for real dimension 2n.
    r = radius * rng.uniform(0.0, 1.0, (count, 1)) ** (1.0 / (2 * n))
    return raw / norms * r


def siegel_coords(
    rng: np.random.Generator,
    count: int,
    n: int,
    log_u: tuple[float, float] = (-2.0, 2.0),
    re_scale: float = 10.0,
    tilde_fraction: float = 0.9,
) -> np.ndarray:
    """Interior Siegel points with log-uniform height above the boundary.

    The height Im z1 - ||z~||^2 is drawn log-uniformly from 10**log_u, the
    tangential part fills at most ``tilde_fraction`` of the available
    Im z1 budget, and Re z1 is uniform.  Shape (count, n).
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    height = 10.0 ** rng.uniform(*log_u, count)
    x = rng.uniform(-re_scale, re_scale, count)
    out = np.empty((count, n), dtype=complex)
    if n == 1:
        out[:, 0] = x + 1j * height
        return out
    direction = rng.normal(size=(count, n - 1)) + 1j * rng.normal(size=(count, n - 1))
    direction /= np.linalg.norm(direction, axis=-1, keepdims=True)
    # ||z~||^2 = s * height / (1 - s) keeps height exact for any s in [0, 1).
    s = rng.uniform(0.0, tilde_fraction, count)
    tilde_norm = np.sqrt(s * height / (1.0 - s))
    out[:, 1:] = direction * tilde_norm[:, None]
    out[:, 0] = x + 1j * (height + tilde_norm**2)
    margin = out[:, 0].imag - np.sum(np.abs(out[:, 1:]) ** 2, axis=-1)
    assert np.all(margin > INTERIOR_MARGIN)
    return out


def tangent_vectors(rng: np.random.Generator, count: int, n: int, scale: float = 1.0) -> np.ndarray:
    """Complex Gaussian tangent vectors, shape (count, n)."""
    return scale * (rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n)))


def herglotz_measures(rng: np.random.Generator, count: int, max_atoms: int = 4) -> list:
    """Random discrete measures on the real line with nonnegative masses."""
    from .fields import DiscreteMeasure

    measures = []
    for _ in range(count):
        k = int(rng.integers(1, max_atoms + 1))
        us = rng.uniform(-5.0, 5.0, k)
        ms = rng.uniform(0.1, 2.0, k)
        measures.append(DiscreteMeasure(tuple(zip(us.tolist(), ms.tolist()))))
    return measures
