"""Generator-class membership checks and capacity estimation.

A holomorphic H : H -> closure(H) on the half-plane belongs to the chordal
class with constant c exactly when Im(z) |H(z)| <= c everywhere, and the
smallest such constant (the capacity of H) is the limit of y |H(iy)| as
y -> infinity.  On the Siegel half-space the class with constant c is cut out
by the metric inequality

    ||H(z)||_{H_n, z} <= c / u(z)^2,

which this module tests by taking suprema over the versioned grids of
:mod:`siegelflow.grids`.  Verdicts are reported with the sampled supremum and
the witness point attaining it; "consistent" means no sampled violation, it
is not a proof of membership.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .domains import (
    Domain,
    format_complex,
    hyperbolic_norm_sq_array,
    poisson_values,
)
from .errors import ArityMismatchError, FieldEvaluationError
from .fields import VectorField
from .geodesics import GeodesicParam, slice_field
from .grids import SIEGEL_GRID_V1, HALFPLANE_GRID_V1, halfplane_grid, siegel_grid

# Relative slack applied to every sampled inequality before declaring a
# violation; absorbs harmless last-digit rounding.
INEQUALITY_SLACK = 1e-9

CAPACITY_DEFAULTS = {"y_min": 1.0, "y_max": 1e8, "count": 64}


@dataclass(frozen=True)
class CapacityEstimate:
    """Tail estimate of y |H(iy)| along the imaginary axis."""

    value: float
    trend: str  # converged | increasing | inconclusive
    samples: tuple[tuple[float, float], ...]

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "trend": self.trend,
            "samples": [[y, s] for y, s in self.samples],
        }


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of a sampled membership inequality."""

    constant_c: float
    sup_observed: float
    witness: tuple[complex, ...]
    witness_domain: Domain
    verdict: str  # consistent | violated
    grid_name: str
    notes: tuple[str, ...] = dataclass_field(default=())

    def to_json(self) -> dict:
        return {
            "c": self.constant_c,
            "sup": self.sup_observed,
            "witness": [format_complex(c) for c in self.witness],
            "domain": self.witness_domain.value,
            "verdict": self.verdict,
            "grid": self.grid_name,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class SliceReport:
    gamma: tuple[complex, ...]
    pointwise: MembershipReport
    capacity: CapacityEstimate

    def to_json(self) -> dict:
        return {
            "gamma": [format_complex(g) for g in self.gamma],
            "pointwise": self.pointwise.to_json(),
            "capacity": self.capacity.to_json(),
        }


@dataclass(frozen=True)
class InequalityReport:
    """Worst sampled margin of a pointwise inequality (negative = violated)."""

    worst_margin: float
    witness: tuple[complex, ...]
    ok: bool
    grid_name: str

    def to_json(self) -> dict:
        return {
            "worst_margin": self.worst_margin,
            "witness": [format_complex(c) for c in self.witness],
            "ok": self.ok,
            "grid": self.grid_name,
        }


def _finite_or_raise(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise FieldEvaluationError(f"{what} produced non-finite values")


def _verdict(sup: float, c: float) -> str:
    return "violated" if sup > c * (1.0 + INEQUALITY_SLACK) else "consistent"


# ---------------------------------------------------------------------------
# One-dimensional estimates
# ---------------------------------------------------------------------------

def estimate_capacity_1d(
    field: VectorField,
    y_min: float = CAPACITY_DEFAULTS["y_min"],
    y_max: float = CAPACITY_DEFAULTS["y_max"],
    count: int = CAPACITY_DEFAULTS["count"],
) -> CapacityEstimate:
    """Estimate the capacity of a half-plane field from its vertical tail.

    Samples y |H(iy)| on a geometric grid; the reported value is the maximum
    over the last quarter of the samples.  The trend is ``converged`` when
    the tail's relative spread is below 1e-4, ``increasing`` when the tail
    still grows monotonically by more than 1%, else ``inconclusive``.
    """
    if field.dimension != 1:
        raise ArityMismatchError("capacity estimation needs a 1-d field")
    if not (0 < y_min < y_max):
        raise ValueError("need 0 < y_min < y_max")
    ys = np.geomspace(y_min, y_max, count)
    values = field((1j * ys)[:, None])[..., 0]
    _finite_or_raise(values, field.description)
    scaled = ys * np.abs(values)
    tail = scaled[-max(1, count // 4):]
    value = float(np.max(tail))
    if value == 0.0:
        trend = "converged"
    else:
        spread = float((np.max(tail) - np.min(tail)) / np.max(tail))
        if spread < 1e-4:
            trend = "converged"
        elif np.all(np.diff(tail) >= 0) and tail[-1] > 1.01 * tail[0]:
            trend = "increasing"
        else:
            trend = "inconclusive"
    samples = tuple((float(y), float(s)) for y, s in zip(ys, scaled))
    return CapacityEstimate(value=value, trend=trend, samples=samples)


def check_pointwise_1d(
    field: VectorField, c: float, grid: np.ndarray | None = None
) -> MembershipReport:
    """Test Im(z) |H(z)| <= c on a half-plane grid.

    Also verifies Im(H) >= -1e-12 (H must map into the closed half-plane);
    failures are reported in ``notes`` without affecting the supremum-based
    verdict rule.
    """
    if field.dimension != 1:
        raise ArityMismatchError("check_pointwise_1d needs a 1-d field")
    grid_name = HALFPLANE_GRID_V1 if grid is None else "custom"
    points = halfplane_grid() if grid is None else np.asarray(grid, complex)
    values = field(points)[..., 0]
    _finite_or_raise(values, field.description)
    scaled = points[:, 0].imag * np.abs(values)
    index = int(np.argmax(scaled))
    notes = []
    worst_im = float(np.min(values.imag))
    if worst_im < -1e-12:
        at = points[int(np.argmin(values.imag)), 0]
        notes.append(
            f"Im(H) = {worst_im:.3e} < 0 at {format_complex(at)}; "
            "H does not map the half-plane into its closure"
        )
    return MembershipReport(
        constant_c=float(c),
        sup_observed=float(scaled[index]),
        witness=(complex(points[index, 0]),),
        witness_domain=Domain.HALF_PLANE,
        verdict=_verdict(float(scaled[index]), float(c)),
        grid_name=grid_name,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Siegel membership
# ---------------------------------------------------------------------------

def membership_siegel(
    field: VectorField, c: float, grid: np.ndarray | None = None
) -> MembershipReport:
    """Test the metric inequality u(z)^2 ||H(z)||_{H_n,z} <= c on a grid."""
    grid_name = SIEGEL_GRID_V1 if grid is None else "custom"
    points = siegel_grid(field.dimension) if grid is None else np.asarray(grid, complex)
    if points.shape[-1] != field.dimension:
        raise ArityMismatchError("grid dimension does not match the field")
    values = field(points)
    _finite_or_raise(values, field.description)
    u = poisson_values(Domain.SIEGEL, points)
    norm_sq = hyperbolic_norm_sq_array(Domain.SIEGEL, points, values)
    scaled = (u * u) * np.sqrt(norm_sq)
    index = int(np.argmax(scaled))
    return MembershipReport(
        constant_c=float(c),
        sup_observed=float(scaled[index]),
        witness=tuple(points[index]),
        witness_domain=Domain.SIEGEL,
        verdict=_verdict(float(scaled[index]), float(c)),
        grid_name=grid_name,
    )


def membership_ball(
    field: VectorField, c: float, grid: np.ndarray | None = None
) -> MembershipReport:
    """Ball-side membership test on the Cayley image of a Siegel grid.

    The inequality is u_B(w)^2 ||G(w)||_{B_n,w} <= c; with the default grids
    this is the exact transport of :func:`membership_siegel`, so the two
    verdicts must agree for G = pushforward of H.
    """
    from .domains import cayley_ball_coords

    grid_name = SIEGEL_GRID_V1 if grid is None else "custom"
    siegel_points = (
        siegel_grid(field.dimension) if grid is None else np.asarray(grid, complex)
    )
    points = cayley_ball_coords(siegel_points)
    values = field(points)
    _finite_or_raise(values, field.description)
    u = poisson_values(Domain.BALL, points)
    norm_sq = hyperbolic_norm_sq_array(Domain.BALL, points, values)
    scaled = (u * u) * np.sqrt(norm_sq)
    index = int(np.argmax(scaled))
    return MembershipReport(
        constant_c=float(c),
        sup_observed=float(scaled[index]),
        witness=tuple(points[index]),
        witness_domain=Domain.BALL,
        verdict=_verdict(float(scaled[index]), float(c)),
        grid_name=f"cayley[{grid_name}]",
    )


def slice_membership(
    field: VectorField,
    gammas,
    c: float,
    jobs: int = 1,
    y_max: float = CAPACITY_DEFAULTS["y_max"],
) -> list[SliceReport]:
    """Pointwise check and capacity estimate for each sliced direction."""

    def one(gamma_coords) -> SliceReport:
        param = GeodesicParam(tuple(np.atleast_1d(gamma_coords)))
        sliced = slice_field(field, param)
        report = check_pointwise_1d(sliced, c)
        estimate = estimate_capacity_1d(sliced, y_max=y_max)
        return SliceReport(
            gamma=param.gamma, pointwise=report, capacity=estimate
        )

    gammas = list(gammas)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, gammas))
    return [one(g) for g in gammas]


# ---------------------------------------------------------------------------
# Self-map inequalities
# ---------------------------------------------------------------------------

def horosphere_inequality_check(
    displacement: VectorField,
    grid: np.ndarray | None = None,
    slack: float = 1e-10,
) -> InequalityReport:
    """Sample ||H~(z)||^2 <= |H1(z) - 2i <H~(z), z~>| for H = f - id.

    This is the first-order consequence of horosphere preservation by a
    self-map f fixing the boundary point at infinity.
    """
    grid_name = SIEGEL_GRID_V1 if grid is None else "custom"
    points = (
        siegel_grid(displacement.dimension)
        if grid is None
        else np.asarray(grid, complex)
    )
    values = displacement(points)
    _finite_or_raise(values, displacement.description)
    tail = values[..., 1:]
    inner = np.sum(np.conj(points[..., 1:]) * tail, axis=-1)
    lhs = np.sum(np.abs(tail) ** 2, axis=-1)
    rhs = np.abs(values[..., 0] - 2j * inner)
    margins = rhs - lhs
    index = int(np.argmin(margins))
    worst = float(margins[index])
    return InequalityReport(
        worst_margin=worst,
        witness=tuple(points[index]),
        ok=worst >= -slack,
        grid_name=grid_name,
    )


def capacity_additivity_check(parts, composite: float, tol: float = 1e-3) -> bool:
    """|sum(parts) - composite| <= tol."""
    return abs(float(np.sum(parts)) - float(composite)) <= tol
