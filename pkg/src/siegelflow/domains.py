"""Domains, Cayley transport, Poisson kernels, and the invariant metric.

Four domains are modeled: the unit disc, the upper half-plane, the Euclidean
unit ball of C^n, and the Siegel upper half-space

    H_n = { z = (z1, z~) in C^n : Im(z1) > ||z~||^2 },   z~ = (z2, ..., zn).

The half-space carries a closed-form Bergman-type metric normalized to
holomorphic sectional curvature -1; all hyperbolic lengths on the ball are
computed by transporting tangent vectors through the Cayley biholomorphism

    C(z) = ( (z1 - i)/(z1 + i), 2 z2/(z1 + i), ..., 2 zn/(z1 + i) ).

The pluricomplex Poisson kernel u is the strictly negative function whose
sublevel sets are horospheres centered at the distinguished boundary point
(infinity on the half-space side, e1 on the ball side):

    u_{H_n}(z) = -Im(z1) + ||z~||^2,
    u_{B_n}(w) = -(1 - ||w||^2) / |1 - w1|^2,

and u_{H_n} = u_{B_n} o C.  Everything here degenerates correctly at n = 1,
where the Siegel domain is the half-plane and the ball is the disc.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ArityMismatchError, DomainViolation

# A point counts as interior only when its defining inequality holds with
# this much room; boundary-adjacent inputs are rejected rather than trusted.
INTERIOR_MARGIN = 1e-12


class Domain(str, Enum):
    DISC = "disc"
    HALF_PLANE = "half_plane"
    BALL = "ball"
    SIEGEL = "siegel"


_ONE_DIM = (Domain.DISC, Domain.HALF_PLANE)


def interior_margin(domain: Domain, coords: np.ndarray) -> np.ndarray:
    """Signed distance-like margin of the defining inequality.

    ``coords`` has shape (..., n); the result drops the last axis.  Positive
    values are interior, zero is the boundary.
    """
    coords = np.asarray(coords, dtype=complex)
    if domain == Domain.DISC:
        return 1.0 - np.abs(coords[..., 0])
    if domain == Domain.HALF_PLANE:
        return coords[..., 0].imag
    if domain == Domain.BALL:
        return 1.0 - np.sqrt(np.sum(np.abs(coords) ** 2, axis=-1))
    if domain == Domain.SIEGEL:
        tail = np.sum(np.abs(coords[..., 1:]) ** 2, axis=-1)
        return coords[..., 0].imag - tail
    raise ValueError(f"unknown domain {domain!r}")


def is_interior(domain: Domain, coords: np.ndarray) -> np.ndarray:
    return interior_margin(domain, coords) > INTERIOR_MARGIN


@dataclass(frozen=True)
class DomainPoint:
    """An interior point of one of the four model domains."""

    domain: Domain
    coords: tuple[complex, ...]

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        n = len(coords)
        if n == 0:
            raise ArityMismatchError("a point needs at least one coordinate")
        if self.domain in _ONE_DIM and n != 1:
            raise ArityMismatchError(
                f"{self.domain.value} points are one-dimensional, got n={n}"
            )
        arr = np.array(coords, dtype=complex)
        if not np.all(np.isfinite(arr)):
            raise DomainViolation("point has non-finite coordinates")
        margin = float(interior_margin(self.domain, arr))
        if not margin > INTERIOR_MARGIN:
            raise DomainViolation(
                f"point {coords} is not interior to {self.domain.value} "
                f"(margin {margin:.3e})"
            )

    @property
    def n(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=complex)


def disc_point(z: complex) -> DomainPoint:
    return DomainPoint(Domain.DISC, (z,))


def half_plane_point(z: complex) -> DomainPoint:
    return DomainPoint(Domain.HALF_PLANE, (z,))


def ball_point(*coords: complex) -> DomainPoint:
    return DomainPoint(Domain.BALL, tuple(coords))


def siegel_point(*coords: complex) -> DomainPoint:
    return DomainPoint(Domain.SIEGEL, tuple(coords))


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector attached to an interior base point."""

    base: DomainPoint
    v: tuple[complex, ...]

    def __post_init__(self):
        v = tuple(complex(c) for c in self.v)
        object.__setattr__(self, "v", v)
        if len(v) != self.base.n:
            raise ArityMismatchError(
                f"vector length {len(v)} != point dimension {self.base.n}"
            )

    def as_array(self) -> np.ndarray:
        return np.array(self.v, dtype=complex)


@dataclass(frozen=True, eq=False)
class MetricMatrix:
    """Hermitian positive-definite metric matrix at a base point."""

    g: np.ndarray
    base: DomainPoint


# ---------------------------------------------------------------------------
# Poisson kernel and horospheres
# ---------------------------------------------------------------------------

def poisson_values(domain: Domain, coords: np.ndarray) -> np.ndarray:
    """Pluricomplex Poisson kernel on an array of points, shape (..., n)."""
    coords = np.asarray(coords, dtype=complex)
    if domain == Domain.SIEGEL:
        tail = np.sum(np.abs(coords[..., 1:]) ** 2, axis=-1)
        return -coords[..., 0].imag + tail
    if domain == Domain.HALF_PLANE:
        return -coords[..., 0].imag
    if domain in (Domain.BALL, Domain.DISC):
        norm_sq = np.sum(np.abs(coords) ** 2, axis=-1)
        return -(1.0 - norm_sq) / np.abs(1.0 - coords[..., 0]) ** 2
    raise ValueError(f"unknown domain {domain!r}")


def poisson(point: DomainPoint) -> float:
    """Poisson kernel at a point; strictly negative on the interior."""
    return float(poisson_values(point.domain, point.as_array()))


def horosphere_radius(point: DomainPoint) -> float:
    """Radius parameter R = 1/|u| of the horosphere through the point."""
    return 1.0 / abs(poisson(point))


# ---------------------------------------------------------------------------
# Cayley transform and its derivative
# ---------------------------------------------------------------------------

def cayley_ball_coords(z: np.ndarray) -> np.ndarray:
    """Coordinates of C(z) for Siegel coordinates z of shape (..., n)."""
    z = np.asarray(z, dtype=complex)
    den = z[..., 0] + 1j
    out = np.empty_like(z)
    out[..., 0] = (z[..., 0] - 1j) / den
    out[..., 1:] = 2.0 * z[..., 1:] / den[..., None]
    return out


def cayley_siegel_coords(w: np.ndarray) -> np.ndarray:
    """Coordinates of C^{-1}(w) for ball coordinates w of shape (..., n)."""
    w = np.asarray(w, dtype=complex)
    den = 1.0 - w[..., 0]
    out = np.empty_like(w)
    out[..., 0] = 1j * (1.0 + w[..., 0]) / den
    out[..., 1:] = 1j * w[..., 1:] / den[..., None]
    return out


def _ball_domain_for(domain: Domain) -> Domain:
    return Domain.DISC if domain == Domain.HALF_PLANE else Domain.BALL


def _siegel_domain_for(domain: Domain) -> Domain:
    return Domain.HALF_PLANE if domain == Domain.DISC else Domain.SIEGEL


def cayley_to_ball(point: DomainPoint) -> DomainPoint:
    """Map a Siegel (or half-plane) point to the ball (or disc)."""
    if point.domain not in (Domain.SIEGEL, Domain.HALF_PLANE):
        raise DomainViolation("cayley_to_ball expects a half-space point")
    out = cayley_ball_coords(point.as_array())
    return DomainPoint(_ball_domain_for(point.domain), tuple(out))


def cayley_to_siegel(point: DomainPoint) -> DomainPoint:
    """Map a ball (or disc) point to the Siegel half-space (or half-plane)."""
    if point.domain not in (Domain.BALL, Domain.DISC):
        raise DomainViolation("cayley_to_siegel expects a ball point")
    out = cayley_siegel_coords(point.as_array())
    return DomainPoint(_siegel_domain_for(point.domain), tuple(out))


def cayley_jacobian(point: DomainPoint) -> np.ndarray:
    """Complex Jacobian matrix dC at a half-space point, shape (n, n).

    Nonzero entries: dC1/dz1 = 2i/(z1+i)^2, dCk/dz1 = -2 zk/(z1+i)^2 and
    dCk/dzk = 2/(z1+i) for k >= 2.
    """
    if point.domain not in (Domain.SIEGEL, Domain.HALF_PLANE):
        raise DomainViolation("cayley_jacobian expects a half-space point")
    z = point.as_array()
    n = z.shape[0]
    den = z[0] + 1j
    jac = np.zeros((n, n), dtype=complex)
    jac[0, 0] = 2j / den**2
    for k in range(1, n):
        jac[k, 0] = -2.0 * z[k] / den**2
        jac[k, k] = 2.0 / den
    return jac


def cayley_inverse_jacobian(point: DomainPoint) -> np.ndarray:
    """Complex Jacobian of C^{-1} at a ball point, shape (n, n)."""
    if point.domain not in (Domain.BALL, Domain.DISC):
        raise DomainViolation("cayley_inverse_jacobian expects a ball point")
    w = point.as_array()
    n = w.shape[0]
    den = 1.0 - w[0]
    jac = np.zeros((n, n), dtype=complex)
    jac[0, 0] = 2j / den**2
    for k in range(1, n):
        jac[k, 0] = 1j * w[k] / den**2
        jac[k, k] = 1j / den
    return jac


def push_tangent_to_ball(z: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply dC(z) to tangent vectors; both arrays have shape (..., n)."""
    z = np.asarray(z, dtype=complex)
    v = np.asarray(v, dtype=complex)
    den = z[..., 0] + 1j
    out = np.empty(np.broadcast(z, v).shape, dtype=complex)
    out[..., 0] = 2j * v[..., 0] / den**2
    out[..., 1:] = (
        -2.0 * z[..., 1:] * v[..., 0, None] / (den**2)[..., None]
        + 2.0 * v[..., 1:] / den[..., None]
    )
    return out


def pull_tangent_to_siegel(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply dC^{-1}(w) to tangent vectors at ball points w."""
    w = np.asarray(w, dtype=complex)
    v = np.asarray(v, dtype=complex)
    den = 1.0 - w[..., 0]
    out = np.empty(np.broadcast(w, v).shape, dtype=complex)
    out[..., 0] = 2j * v[..., 0] / den**2
    out[..., 1:] = (
        1j * w[..., 1:] * v[..., 0, None] / (den**2)[..., None]
        + 1j * v[..., 1:] / den[..., None]
    )
    return out


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------

def bergman_matrix(point: DomainPoint) -> MetricMatrix:
    """Metric matrix (g_{j,k}) of the half-space, curvature -1 normalization.

    With u = u_{H_n}(z):

        g_{1,1} = 1/u^2                  g_{1,k} = 2 i z_k / u^2
        g_{j,1} = -2 i conj(z_j) / u^2   g_{j,k} = 4 z_k conj(z_j) / u^2
        g_{j,j} = 4 (Im(z1) - sum_{l>=2, l!=j} |z_l|^2) / u^2

    for j, k >= 2, j != k.  Squared length of w is  w^T g conj(w).
    """
    if point.domain not in (Domain.SIEGEL, Domain.HALF_PLANE):
        raise DomainViolation("bergman_matrix expects a half-space point")
    z = point.as_array()
    n = z.shape[0]
    u = poisson(point)
    u_sq = u * u
    g = np.zeros((n, n), dtype=complex)
    g[0, 0] = 1.0 / u_sq
    abs_sq = np.abs(z) ** 2
    for j in range(1, n):
        g[0, j] = 2j * z[j] / u_sq
        g[j, 0] = -2j * np.conj(z[j]) / u_sq
        excluded = np.sum(abs_sq[1:]) - abs_sq[j]
        g[j, j] = 4.0 * (z[0].imag - excluded) / u_sq
        for k in range(1, n):
            if k != j:
                g[j, k] = 4.0 * z[k] * np.conj(z[j]) / u_sq
    return MetricMatrix(g=g, base=point)


def siegel_norm_sq(coords: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Squared hyperbolic length on the half-space, vectorized.

    Expanded form of the metric's quadratic form: with tau = conj(z~)^T w~,

        u^2 ||w||^2 = |w1|^2 - 4 Im(w1 conj(tau)) + 4 |u| ||w~||^2 + 4 |tau|^2.
    """
    coords = np.asarray(coords, dtype=complex)
    vecs = np.asarray(vecs, dtype=complex)
    au = coords[..., 0].imag - np.sum(np.abs(coords[..., 1:]) ** 2, axis=-1)
    w1 = vecs[..., 0]
    tau = np.sum(np.conj(coords[..., 1:]) * vecs[..., 1:], axis=-1)
    q = (
        np.abs(w1) ** 2
        - 4.0 * (w1 * np.conj(tau)).imag
        + 4.0 * au * np.sum(np.abs(vecs[..., 1:]) ** 2, axis=-1)
        + 4.0 * np.abs(tau) ** 2
    )
    return q / (au * au)


def hyperbolic_norm_sq_array(
    domain: Domain, coords: np.ndarray, vecs: np.ndarray
) -> np.ndarray:
    """Squared hyperbolic norms for arrays of (point, vector) pairs."""
    coords = np.asarray(coords, dtype=complex)
    vecs = np.asarray(vecs, dtype=complex)
    if domain == Domain.DISC:
        scale = 2.0 / (1.0 - np.abs(coords[..., 0]) ** 2)
        return (scale * np.abs(vecs[..., 0])) ** 2
    if domain == Domain.HALF_PLANE:
        return (np.abs(vecs[..., 0]) / coords[..., 0].imag) ** 2
    if domain == Domain.SIEGEL:
        return siegel_norm_sq(coords, vecs)
    if domain == Domain.BALL:
        z = cayley_siegel_coords(coords)
        vz = pull_tangent_to_siegel(coords, vecs)
        return siegel_norm_sq(z, vz)
    raise ValueError(f"unknown domain {domain!r}")


def hyperbolic_norm(tangent: TangentVector) -> float:
    """Hyperbolic length of a tangent vector.

    Disc and half-plane use the classical closed forms 2|v|/(1-|z|^2) and
    |v|/Im(z).  Siegel points evaluate the quadratic form of
    ``bergman_matrix`` literally; ball vectors are transported to the
    half-space through the Cayley map first.
    """
    point = tangent.base
    v = tangent.as_array()
    if point.domain == Domain.DISC:
        z = point.coords[0]
        return 2.0 * abs(v[0]) / (1.0 - abs(z) ** 2)
    if point.domain == Domain.HALF_PLANE:
        return abs(v[0]) / point.coords[0].imag
    if point.domain == Domain.SIEGEL:
        g = bergman_matrix(point).g
        value = v @ g @ np.conj(v)
        return float(np.sqrt(value.real))
    if point.domain == Domain.BALL:
        z = cayley_to_siegel(point)
        vz = pull_tangent_to_siegel(point.as_array(), v)
        return hyperbolic_norm(TangentVector(z, tuple(vz)))
    raise ValueError(f"unknown domain {point.domain!r}")


# ---------------------------------------------------------------------------
# Serialization: complex scalars as "a+bi" strings
# ---------------------------------------------------------------------------

_COMPLEX_GUARD = re.compile(r"^[0-9eEjJ+\-.]*$")


def format_complex(value: complex) -> str:
    """Render a complex number as "a+bi" with up to 15 significant digits."""
    value = complex(value)
    re_part = value.real
    im_part = value.imag
    if im_part == 0.0:
        im_part = 0.0  # normalize -0.0
    sign = "+" if im_part >= 0 else "-"
    return f"{re_part:.15g}{sign}{abs(im_part):.15g}i"


def parse_complex(text: str) -> complex:
    """Parse "a+bi" style literals; accepts bare reals, "i", "2i", "1-0.5i"."""
    stripped = "".join(text.split())
    if not stripped:
        raise ValueError("empty complex literal")
    normalized = stripped.replace("i", "j").replace("I", "j")
    if not _COMPLEX_GUARD.match(normalized):
        raise ValueError(f"invalid complex literal {text!r}")
    try:
        value = complex(normalized)
    except ValueError as exc:
        raise ValueError(f"invalid complex literal {text!r}") from exc
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise ValueError(f"non-finite complex literal {text!r}")
    return value


def point_to_json(point: DomainPoint) -> dict:
    return {
        "domain": point.domain.value,
        "coords": [format_complex(c) for c in point.coords],
    }


def point_from_json(data: dict) -> DomainPoint:
    domain = Domain(data["domain"])
    coords = tuple(parse_complex(c) for c in data["coords"])
    return DomainPoint(domain, coords)
