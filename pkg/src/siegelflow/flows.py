"""Flow integration for semigroup and Loewner-type evolution equations.

The autonomous problem is dw/dt = G(w), w(0) = z0, whose solutions form the
one-parameter semigroup generated by G; the non-autonomous variant swaps in a
piecewise-constant-in-time field.  The integrator is an adaptive embedded
explicit Runge-Kutta 4(5) pair with FSAL and PI step-size control.  The
tolerance is interpreted as local error per unit time, so endpoint errors
scale roughly linearly in ``tol`` for smooth fields.

Trajectories must stay inside their domain: a step whose endpoint leaves the
interior (margin <= 1e-12) is rejected and retried at half the step size, and
sixty consecutive rejections raise StepSizeUnderflow.  For fields in the
chordal classes this only happens when something is genuinely wrong, since
their flows increase |u| and therefore move away from the boundary.

Everything here is deterministic: identical inputs produce bit-identical
trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import CAPACITY_DEFAULTS, CapacityEstimate, estimate_capacity_1d
from .domains import (
    INTERIOR_MARGIN,
    Domain,
    DomainPoint,
    TangentVector,
    format_complex,
    hyperbolic_norm,
    interior_margin,
    poisson,
    poisson_values,
)
from .errors import (
    BoundViolation,
    CoverageGap,
    DomainViolation,
    FieldEvaluationError,
    MonotonicityViolation,
    StepSizeUnderflow,
)
from .fields import VectorField
from .grids import HOROSPHERE_SAMPLES_V1, horosphere_samples

DEFAULT_TOL = 1e-10

# --- Dormand-Prince 4(5) tableau ------------------------------------------

_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# Difference between the 5th- and 4th-order weights; the 7th stage is FSAL.
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

_MAX_CONSECUTIVE_REJECTS = 60
_STEP_GROW_CAP = 5.0
_STEP_SHRINK_CAP = 0.2


class _Segment:
    """Mutable accumulator for one integration leg."""

    __slots__ = (
        "times", "states", "derivs", "accepted", "rejected", "max_error", "y", "k1"
    )

    def __init__(self) -> None:
        self.times: list[float] = []
        self.states: list[np.ndarray] = []
        self.derivs: list[np.ndarray] = []
        self.accepted = 0
        self.rejected = 0
        self.max_error = 0.0
        self.y: np.ndarray | None = None
        self.k1: np.ndarray | None = None


def _eval_checked(eval_fn, y: np.ndarray) -> np.ndarray:
    k = np.asarray(eval_fn(y), dtype=complex)
    if k.shape != y.shape:
        raise FieldEvaluationError(
            f"field returned shape {k.shape}, expected {y.shape}"
        )
    return k


def _advance(
    eval_fn,
    domain: Domain,
    y0: np.ndarray,
    t0: float,
    t1: float,
    tol: float,
    record: bool,
) -> _Segment:
    """Integrate dy/dt = eval_fn(y) from t0 to t1 with EPUS error control."""
    seg = _Segment()
    y = np.array(y0, dtype=complex)
    k1 = _eval_checked(eval_fn, y)
    if not np.all(np.isfinite(k1)):
        raise FieldEvaluationError("field is not finite at the initial point")
    t = t0
    if record:
        seg.times.append(t0)
        seg.states.append(y.copy())
        seg.derivs.append(k1.copy())
    if t1 == t0:
        seg.y, seg.k1 = y, k1
        return seg

    span = t1 - t0
    d0 = max(float(np.max(np.abs(y))), 1e-6)
    d1 = max(float(np.max(np.abs(k1))), 1e-16)
    h = min(span, 0.01 * d0 / d1)
    r_prev = 1.0
    consecutive = 0
    scale = max(1.0, abs(t0), abs(t1))

    while t < t1 - 1e-15 * scale:
        if h < 1e-15 * scale:
            raise StepSizeUnderflow(
                f"step size underflow at t = {t} (h = {h:.3e})"
            )
        remaining = t1 - t
        last = h >= remaining * (1.0 - 1e-12)
        h_step = remaining if last else h

        ks = [k1]
        for row in _A[1:6]:
            acc = row[0] * ks[0]
            for j in range(1, len(row)):
                if row[j] != 0.0:
                    acc = acc + row[j] * ks[j]
            ks.append(_eval_checked(eval_fn, y + h_step * acc))
        row = _A[6]
        acc = row[0] * ks[0]
        for j in range(2, 6):
            acc = acc + row[j] * ks[j]
        y_new = y + h_step * acc
        k_new = _eval_checked(eval_fn, y_new)
        ks.append(k_new)

        finite = np.all(np.isfinite(y_new)) and all(
            np.all(np.isfinite(k)) for k in ks[1:]
        )
        if not finite or np.min(interior_margin(domain, y_new)) <= INTERIOR_MARGIN:
            h = 0.5 * h_step
            seg.rejected += 1
            consecutive += 1
            if consecutive >= _MAX_CONSECUTIVE_REJECTS:
                raise StepSizeUnderflow(
                    f"trajectory left the domain near t = {t}; "
                    f"{consecutive} consecutive rejections"
                )
            continue

        err_acc = _E[0] * ks[0]
        for j in range(2, 7):
            err_acc = err_acc + _E[j] * ks[j]
        err = float(np.max(np.abs(err_acc)))

        if err <= tol:
            t = t1 if last else t + h_step
            y = y_new
            k1 = k_new
            seg.accepted += 1
            consecutive = 0
            seg.max_error = max(seg.max_error, err)
            if record:
                seg.times.append(t)
                seg.states.append(y.copy())
                seg.derivs.append(k1.copy())
            r = max(err / tol, 1e-10)
            fac = 0.9 * r**-0.175 * r_prev**0.1
            h = h_step * min(_STEP_GROW_CAP, max(_STEP_SHRINK_CAP, fac))
            r_prev = r
        else:
            seg.rejected += 1
            consecutive += 1
            if consecutive >= _MAX_CONSECUTIVE_REJECTS:
                raise StepSizeUnderflow(
                    f"error control failed near t = {t}; "
                    f"{consecutive} consecutive rejections"
                )
            h = h_step * max(0.1, 0.9 * (err / tol) ** -0.25)

    seg.y, seg.k1 = y, k1
    return seg


# ---------------------------------------------------------------------------
# Trajectories
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Trajectory:
    """Accepted integration nodes of one flow line, with diagnostics."""

    domain: Domain
    times: np.ndarray    # (N,), increasing, times[0] = 0
    states: np.ndarray   # (N, n) complex coordinates, all interior
    derivs: np.ndarray   # (N, n) field values at the nodes
    steps_accepted: int
    steps_rejected: int
    max_local_error: float
    tol: float

    @property
    def dimension(self) -> int:
        return self.states.shape[1]

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def final_point(self) -> DomainPoint:
        return DomainPoint(self.domain, tuple(self.states[-1]))

    def points(self) -> list[DomainPoint]:
        return [DomainPoint(self.domain, tuple(row)) for row in self.states]

    def u_values(self) -> np.ndarray:
        return poisson_values(self.domain, self.states)

    def sample(self, ts) -> np.ndarray:
        """Cubic Hermite interpolation at the requested times, shape (..., n)."""
        ts = np.asarray(ts, dtype=float)
        lo, hi = self.times[0], self.times[-1]
        if np.any(ts < lo) or np.any(ts > hi):
            raise ValueError(f"sample times must lie in [{lo}, {hi}]")
        idx = np.clip(np.searchsorted(self.times, ts, side="right") - 1, 0,
                      len(self.times) - 2)
        t0 = self.times[idx]
        h = self.times[idx + 1] - t0
        s = ((ts - t0) / h)[..., None]
        y0, y1 = self.states[idx], self.states[idx + 1]
        f0, f1 = self.derivs[idx], self.derivs[idx + 1]
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return h00 * y0 + h10 * h[..., None] * f0 + h01 * y1 + h11 * h[..., None] * f1

    def to_csv(self, path) -> None:
        """Write `t, re(z1), im(z1), ..., u` rows for external plotting."""
        n = self.dimension
        header = ["t"]
        for k in range(1, n + 1):
            header += [f"re_z{k}", f"im_z{k}"]
        header.append("u")
        us = self.u_values()
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(",".join(header) + "\n")
            for t, row, u in zip(self.times, self.states, us):
                cells = [f"{t:.17g}"]
                for value in row:
                    cells += [f"{value.real:.17g}", f"{value.imag:.17g}"]
                cells.append(f"{u:.17g}")
                handle.write(",".join(cells) + "\n")


def _segment_to_trajectory(seg: _Segment, domain: Domain, tol: float) -> Trajectory:
    return Trajectory(
        domain=domain,
        times=np.asarray(seg.times, dtype=float),
        states=np.asarray(seg.states, dtype=complex),
        derivs=np.asarray(seg.derivs, dtype=complex),
        steps_accepted=seg.accepted,
        steps_rejected=seg.rejected,
        max_local_error=seg.max_error,
        tol=tol,
    )


# ---------------------------------------------------------------------------
# Public integrators
# ---------------------------------------------------------------------------

def integrate_autonomous(
    field: VectorField,
    z0: DomainPoint,
    t_final: float,
    tol: float = DEFAULT_TOL,
) -> Trajectory:
    """Flow z0 forward for time t_final along the autonomous field."""
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if field.dimension != z0.n:
        raise DomainViolation(
            f"field dimension {field.dimension} does not match point {z0.n}"
        )
    y0 = z0.as_array()[None, :]
    seg = _advance(field, z0.domain, y0, 0.0, t_final, tol, record=True)
    trajectory = Trajectory(
        domain=z0.domain,
        times=np.asarray(seg.times, dtype=float),
        states=np.asarray(seg.states, dtype=complex)[:, 0, :],
        derivs=np.asarray(seg.derivs, dtype=complex)[:, 0, :],
        steps_accepted=seg.accepted,
        steps_rejected=seg.rejected,
        max_local_error=seg.max_error,
        tol=tol,
    )
    return trajectory


@dataclass(frozen=True)
class HerglotzField:
    """Piecewise-constant-in-time driving field on contiguous intervals."""

    pieces: tuple[tuple[float, float, VectorField], ...]

    def __post_init__(self):
        if not self.pieces:
            raise CoverageGap("a Herglotz field needs at least one piece")
        previous_end = None
        dimension = self.pieces[0][2].dimension
        for t_start, t_end, field in self.pieces:
            if not (t_end > t_start):
                raise CoverageGap(f"empty piece [{t_start}, {t_end}]")
            if field.dimension != dimension:
                raise CoverageGap("pieces have mismatched dimensions")
            if previous_end is not None and abs(t_start - previous_end) > 1e-12:
                raise CoverageGap(
                    f"gap between pieces at t = {previous_end} vs {t_start}"
                )
            previous_end = t_end

    @property
    def dimension(self) -> int:
        return self.pieces[0][2].dimension

    @property
    def t_start(self) -> float:
        return self.pieces[0][0]

    @property
    def t_end(self) -> float:
        return self.pieces[-1][1]


def integrate_loewner(
    driver,
    z0: DomainPoint,
    t_final: float,
    tol: float = DEFAULT_TOL,
) -> Trajectory:
    """Integrate the piecewise-constant evolution equation up to t_final.

    The integration restarts exactly at piece boundaries, so a schedule
    split at an interior time agrees with the unsplit schedule up to the
    integrator tolerance.
    """
    if not isinstance(driver, HerglotzField):
        driver = HerglotzField(tuple((a, b, f) for a, b, f in driver))
    if driver.t_start > 0.0 or driver.t_end < t_final - 1e-12:
        raise CoverageGap(
            f"pieces cover [{driver.t_start}, {driver.t_end}], "
            f"need [0, {t_final}]"
        )
    if driver.dimension != z0.n:
        raise DomainViolation("driver dimension does not match the point")

    times = [np.array([0.0])]
    states = [z0.as_array()[None, None, :][0]]
    derivs = [driver.pieces[0][2](z0.as_array()[None, :])]
    accepted = rejected = 0
    max_error = 0.0
    y = z0.as_array()[None, :]
    for t_start, t_end, field in driver.pieces:
        start = max(t_start, 0.0)
        stop = min(t_end, t_final)
        if stop <= start:
            continue
        seg = _advance(field, z0.domain, y, start, stop, tol, record=True)
        y = seg.y
        accepted += seg.accepted
        rejected += seg.rejected
        max_error = max(max_error, seg.max_error)
        if seg.accepted:
            times.append(np.asarray(seg.times[1:], dtype=float))
            states.append(np.asarray(seg.states[1:], dtype=complex)[:, 0, :])
            derivs.append(np.asarray(seg.derivs[1:], dtype=complex)[:, 0, :])
    return Trajectory(
        domain=z0.domain,
        times=np.concatenate(times),
        states=np.concatenate(states),
        derivs=np.concatenate(derivs),
        steps_accepted=accepted,
        steps_rejected=rejected,
        max_local_error=max_error,
        tol=tol,
    )


def integrate_fixed_steps(
    field: VectorField, z0: DomainPoint, t_final: float, steps: int
) -> np.ndarray:
    """Endpoint after `steps` uniform steps of the 5th-order formula.

    No error control or domain policing; intended for convergence-order
    measurements against closed-form solutions.
    """
    y = z0.as_array()[None, :]
    h = t_final / steps
    for _ in range(steps):
        ks = [_eval_checked(field, y)]
        for row in _A[1:6]:
            acc = row[0] * ks[0]
            for j in range(1, len(row)):
                if row[j] != 0.0:
                    acc = acc + row[j] * ks[j]
            ks.append(_eval_checked(field, y + h * acc))
        row = _A[6]
        acc = row[0] * ks[0]
        for j in range(2, 6):
            acc = acc + row[j] * ks[j]
        y = y + h * acc
    return y[0]


# ---------------------------------------------------------------------------
# Flow maps
# ---------------------------------------------------------------------------

def flow_map(field: VectorField, t: float, tol: float = DEFAULT_TOL,
             domain: Domain | None = None):
    """Return a batch evaluator for the time-t flow map of the field.

    The evaluator accepts coordinates of shape (..., n) and integrates the
    whole batch in lockstep (one shared adaptive step size, controlled by
    the worst point).
    """
    if domain is None:
        domain = Domain.SIEGEL if field.dimension > 1 else Domain.HALF_PLANE

    def apply(points):
        points = np.asarray(points, dtype=complex)
        flat = points.reshape(-1, points.shape[-1])
        if np.min(interior_margin(domain, flat)) <= INTERIOR_MARGIN:
            raise DomainViolation("flow map applied to a non-interior point")
        seg = _advance(field, domain, flat, 0.0, t, tol, record=False)
        return seg.y.reshape(points.shape)

    return apply


def flow_field(field: VectorField, t: float, tol: float = DEFAULT_TOL,
               domain: Domain | None = None) -> VectorField:
    """The time-t flow map packaged as an evaluatable map z -> Phi_t(z)."""
    return VectorField(
        dimension=field.dimension,
        evaluator=flow_map(field, t, tol, domain),
        description=f"flow[t={t:g}]({field.description})",
    )


def displacement_field(field: VectorField, t: float, tol: float = DEFAULT_TOL,
                       domain: Domain | None = None) -> VectorField:
    """The displacement map z -> Phi_t(z) - z of the field's flow."""
    apply = flow_map(field, t, tol, domain)
    return VectorField(
        dimension=field.dimension,
        evaluator=lambda points: apply(points) - np.asarray(points, dtype=complex),
        description=f"flow[t={t:g}] - id ({field.description})",
    )


# ---------------------------------------------------------------------------
# Dynamical checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    residual: float
    allowance: float
    passed: bool


def semigroup_check(
    field: VectorField,
    z0: DomainPoint,
    t: float,
    s: float,
    tol: float = DEFAULT_TOL,
) -> ResidualReport:
    """Euclidean distance between Phi_{t+s}(z0) and Phi_t(Phi_s(z0))."""
    joint = integrate_autonomous(field, z0, t + s, tol).final_state
    inner = integrate_autonomous(field, z0, s, tol).final_point()
    outer = integrate_autonomous(field, inner, t, tol).final_state
    residual = float(np.linalg.norm(joint - outer))
    allowance = 10.0 * tol * (t + s)
    return ResidualReport(residual, allowance, residual <= allowance)


@dataclass(frozen=True, eq=False)
class MonotonicityReport:
    times: np.ndarray
    u_magnitudes: np.ndarray
    min_increment: float
    passed: bool


def julia_monotonicity(
    field: VectorField,
    z0: DomainPoint,
    t_final: float,
    tol: float = DEFAULT_TOL,
) -> MonotonicityReport:
    """Check that |u| never decreases along the flow (Julia-type invariance).

    Raises MonotonicityViolation (carrying the offending time pair) if a
    decrease beyond 10*tol slack is observed.
    """
    trajectory = integrate_autonomous(field, z0, t_final, tol)
    us = np.abs(trajectory.u_values())
    increments = np.diff(us)
    slack = 10.0 * tol
    if increments.size and float(np.min(increments)) < -slack:
        k = int(np.argmin(increments))
        pair = (float(trajectory.times[k]), float(trajectory.times[k + 1]))
        raise MonotonicityViolation(
            f"|u| decreased from {us[k]} to {us[k + 1]} "
            f"between t = {pair[0]} and t = {pair[1]}",
            time_pair=pair,
        )
    min_increment = float(np.min(increments)) if increments.size else 0.0
    return MonotonicityReport(
        times=trajectory.times,
        u_magnitudes=us,
        min_increment=min_increment,
        passed=True,
    )


def displacement_integral(c: float, t: float) -> float:
    """Closed form of the arc-length integral of sqrt(1 + c^2 s^2) on [0, t]."""
    if c == 0.0:
        return t
    return t * math.sqrt(1.0 + c * c * t * t) / 2.0 + math.asinh(c * t) / (2.0 * c)


@dataclass(frozen=True)
class DisplacementBoundReport:
    displacement_norm: float
    bound: float
    passed: bool
    t: float
    constant_c: float


def displacement_bound_check(
    field: VectorField,
    c: float,
    z0: DomainPoint,
    t: float,
    tol: float = DEFAULT_TOL,
    slack: float = 1e-6,
) -> DisplacementBoundReport:
    """Hyperbolic displacement bound for flows of class-c fields.

    Checks  || Phi_t(z0) - z0 ||_{z0}  <=  c (t + integral) / u(z0)^2  where
    the integral of sqrt(1 + c^2 s^2) is evaluated in closed form.  The bound
    is calibrated for |u(z0)| >= 1.
    """
    u = poisson(z0)
    if abs(u) < 1.0 - 1e-12:
        raise DomainViolation(
            f"displacement bound needs |u(z0)| >= 1, got {abs(u)}"
        )
    endpoint = integrate_autonomous(field, z0, t, tol).final_state
    difference = endpoint - z0.as_array()
    lhs = hyperbolic_norm(TangentVector(z0, tuple(difference)))
    rhs = c * (t + displacement_integral(c, t)) / (u * u)
    report = DisplacementBoundReport(
        displacement_norm=lhs,
        bound=float(rhs),
        passed=lhs <= rhs + slack,
        t=t,
        constant_c=c,
    )
    if not report.passed:
        raise BoundViolation(
            f"displacement {lhs} exceeds bound {rhs} at t = {t} (c = {c})"
        )
    return report


@dataclass(frozen=True)
class HorosphereImageReport:
    worst_value: float
    limit: float
    witness: tuple[complex, ...]
    count: int
    grid_name: str
    passed: bool


def horosphere_image_check(
    self_map,
    c: float,
    dimension: int = 2,
    samples: np.ndarray | None = None,
    slack: float = 1e-9,
) -> HorosphereImageReport:
    """Check |u(f(z))| <= 1 + c on samples of the unit horosphere boundary.

    `self_map` is any batch evaluator of shape (..., n) -> (..., n), e.g. a
    flow map or a parsed expression pair.
    """
    grid_name = HOROSPHERE_SAMPLES_V1 if samples is None else "custom"
    points = horosphere_samples(dimension) if samples is None else np.asarray(
        samples, dtype=complex
    )
    images = np.asarray(self_map(points), dtype=complex)
    values = np.abs(poisson_values(Domain.SIEGEL, images))
    index = int(np.argmax(values))
    worst = float(values[index])
    limit = 1.0 + c
    report = HorosphereImageReport(
        worst_value=worst,
        limit=limit,
        witness=tuple(points[index]),
        count=points.shape[0],
        grid_name=grid_name,
        passed=worst <= limit + slack,
    )
    if not report.passed:
        raise BoundViolation(
            f"|u(f(z))| = {worst} exceeds 1 + c = {limit} "
            f"at z = {report.witness}"
        )
    return report


# ---------------------------------------------------------------------------
# Iteration diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IterationDiagnostic:
    tag: str  # diverges_to_infinity | converged_interior | inconclusive
    u_magnitudes: np.ndarray
    final: tuple[complex, ...]
    iterations: int

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "iterations": self.iterations,
            "u_initial": float(self.u_magnitudes[0]),
            "u_final": float(self.u_magnitudes[-1]),
            "final": [format_complex(c) for c in self.final],
        }


def iterate_map(
    self_map,
    z0: DomainPoint,
    count: int,
    divergence_threshold: float = 1e6,
    step_tol: float = 1e-9,
) -> IterationDiagnostic:
    """Iterate a self-map and classify the orbit's boundary behavior.

    diverges_to_infinity: some |u(f^k(z))| exceeds the threshold, or |u| is
    nondecreasing along the whole orbit and at least doubles.
    converged_interior: consecutive iterates get closer than step_tol.
    inconclusive: anything else (the orbit neither settles nor clearly runs
    off to the boundary point at infinity within the budget).
    """
    domain = z0.domain
    current = z0.as_array()[None, :]
    us = [abs(float(poisson_values(domain, current)[0]))]
    tag = None
    performed = 0
    for _ in range(count):
        image = np.asarray(self_map(current), dtype=complex)
        if not np.all(np.isfinite(image)):
            raise FieldEvaluationError("self-map produced non-finite iterate")
        performed += 1
        step = float(np.max(np.abs(image - current)))
        current = image
        us.append(abs(float(poisson_values(domain, current)[0])))
        if us[-1] > divergence_threshold:
            tag = "diverges_to_infinity"
            break
        if step < step_tol:
            tag = "converged_interior"
            break
    us = np.asarray(us)
    if tag is None:
        nondecreasing = bool(np.all(np.diff(us) >= -1e-12 * np.max(us)))
        if nondecreasing and us[-1] >= 2.0 * us[0]:
            tag = "diverges_to_infinity"
        else:
            tag = "inconclusive"
    return IterationDiagnostic(
        tag=tag,
        u_magnitudes=us,
        final=tuple(current[0]),
        iterations=performed,
    )


def extract_capacity(
    self_map,
    y_min: float = 1.0,
    y_max: float = 1e5,
    count: int = CAPACITY_DEFAULTS["count"],
) -> CapacityEstimate:
    """Capacity of a 1-d self-map via the tail of y |f(iy) - iy|.

    The default y_max is smaller than the raw estimator's because computing
    f(iy) - iy at height y loses about y * ulp(y) to cancellation; beyond
    y ~ 1e5 the roundoff noise would dominate the tail for double precision.
    """
    displacement = VectorField(
        dimension=1,
        evaluator=lambda pts: np.asarray(self_map(pts), dtype=complex) - pts,
        description="self-map displacement",
    )
    return estimate_capacity_1d(displacement, y_min=y_min, y_max=y_max, count=count)
