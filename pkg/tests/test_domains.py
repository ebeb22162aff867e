"""Domain points, Cayley transform, Poisson kernels, and the Bergman metric."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from siegelflow import sampling
from siegelflow.domains import (
    Domain,
    DomainPoint,
    TangentVector,
    ball_point,
    bergman_matrix,
    cayley_ball_coords,
    cayley_inverse_jacobian,
    cayley_jacobian,
    cayley_siegel_coords,
    cayley_to_ball,
    cayley_to_siegel,
    disc_point,
    format_complex,
    half_plane_point,
    horosphere_radius,
    hyperbolic_norm,
    hyperbolic_norm_sq_array,
    parse_complex,
    point_from_json,
    point_to_json,
    poisson,
    pull_tangent_to_siegel,
    push_tangent_to_ball,
    siegel_point,
)
from siegelflow.errors import DomainViolation


# ---------------------------------------------------------------------------
# Point construction and validation
# ---------------------------------------------------------------------------

def test_interior_validation():
    siegel_point(1j, 0.5)  # Im z1 = 1 > 0.25
    with pytest.raises(DomainViolation):
        siegel_point(1j, 1.0)  # Im z1 = 1 = |z2|^2, boundary
    with pytest.raises(DomainViolation):
        half_plane_point(1.0)
    with pytest.raises(DomainViolation):
        disc_point(1.0)
    with pytest.raises(DomainViolation):
        ball_point(0.8, 0.7)  # norm > 1


def test_n1_siegel_degenerates_to_half_plane():
    # with no z~ block the membership condition is just Im z1 > 0
    p = DomainPoint(Domain.SIEGEL, (2 + 1j,))
    assert poisson(p) == -1.0


def test_complex_string_round_trip():
    for z in (0j, 1j, -0.5j, 1 + 2j, -1.25 - 3e-4j, 12345.678 + 0.25j):
        assert parse_complex(format_complex(z)) == z
    assert parse_complex("i") == 1j
    assert parse_complex("-i") == -1j
    assert parse_complex("2i") == 2j
    assert parse_complex("3") == 3 + 0j


def test_point_json_round_trip():
    p = siegel_point(0.5 + 2j, 0.25 - 0.125j)
    q = point_from_json(point_to_json(p))
    assert q.domain == p.domain
    assert q.coords == p.coords


# ---------------------------------------------------------------------------
# Poisson kernels and horospheres
# ---------------------------------------------------------------------------

def test_poisson_oracles():
    assert poisson(siegel_point(1j, 0.0)) == -1.0
    assert poisson(siegel_point(2j, 1.0)) == -1.0  # 2 - |1|^2
    assert poisson(half_plane_point(3j)) == -3.0
    # ball kernel at the origin: -(1 - 0)/|1 - 0|^2 = -1
    assert poisson(ball_point(0.0, 0.0)) == -1.0
    # disc: -(1 - 1/4)/|1 - 1/2|^2 = -3
    assert poisson(disc_point(0.5)) == pytest.approx(-3.0, rel=1e-15)


def test_horosphere_radius_is_reciprocal_height():
    assert horosphere_radius(siegel_point(1j, 0.0)) == pytest.approx(1.0)
    assert horosphere_radius(half_plane_point(4j)) == pytest.approx(0.25)


# ---------------------------------------------------------------------------
# Cayley transform
# ---------------------------------------------------------------------------

def test_cayley_oracles():
    w = cayley_to_ball(siegel_point(1j, 0.0))
    np.testing.assert_allclose(w.coords, [0.0, 0.0], atol=1e-15)
    w = cayley_to_ball(siegel_point(2j, 1.0))
    np.testing.assert_allclose(w.coords, [1 / 3, -2j / 3], rtol=1e-15)
    z = cayley_to_siegel(ball_point(0.0, 0.0))
    np.testing.assert_allclose(z.coords, [1j, 0.0], atol=1e-15)


def test_cayley_round_trip_on_samples(rng):
    z = sampling.siegel_coords(rng, 300, 2)
    w = cayley_ball_coords(z)
    assert np.all(np.sum(np.abs(w) ** 2, axis=1) < 1.0)
    back = cayley_siegel_coords(w)
    np.testing.assert_allclose(back, z, rtol=0, atol=1e-11)


def test_poisson_transfers_through_cayley(rng):
    from siegelflow.domains import poisson_values

    z = sampling.siegel_coords(rng, 300, 2, log_u=(-2, 2), re_scale=2.0)
    u_s = poisson_values(Domain.SIEGEL, z)
    u_b = poisson_values(Domain.BALL, cayley_ball_coords(z))
    np.testing.assert_allclose(u_b, u_s, rtol=1e-12)


def test_cayley_jacobian_matches_finite_differences(rng):
    z = sampling.siegel_coords(rng, 20, 2, log_u=(-1, 1), re_scale=2.0,
                               tilde_fraction=0.5)
    h = 1e-6
    for row in z:
        jac = cayley_jacobian(DomainPoint(Domain.SIEGEL, tuple(row)))
        point = row[None, :]
        for axis in range(2):
            shift = np.zeros((1, 2), complex)
            shift[0, axis] = h
            fd = (cayley_ball_coords(point + shift)
                  - cayley_ball_coords(point - shift)) / (2 * h)
            np.testing.assert_allclose(jac[:, axis], fd[0], rtol=0, atol=2e-7)


def test_jacobians_are_mutual_inverses(rng):
    z = sampling.siegel_coords(rng, 50, 2)
    for row in z:
        p = DomainPoint(Domain.SIEGEL, tuple(row))
        forward = cayley_jacobian(p)
        backward = cayley_inverse_jacobian(cayley_to_ball(p))
        np.testing.assert_allclose(backward @ forward, np.eye(2),
                                   rtol=0, atol=1e-11)


# ---------------------------------------------------------------------------
# Bergman metric
# ---------------------------------------------------------------------------

def test_bergman_matrix_oracle():
    g = bergman_matrix(siegel_point(2j, 1.0)).g
    expected = np.array([[1.0, 2j], [-2j, 8.0]])
    np.testing.assert_allclose(g, expected, rtol=0, atol=1e-15)


def test_bergman_matrix_is_hermitian_positive(rng):
    z = sampling.siegel_coords(rng, 200, 2)
    for row in z:
        g = bergman_matrix(DomainPoint(Domain.SIEGEL, tuple(row))).g
        assert np.array_equal(g, np.conj(g.T))
        assert np.min(np.linalg.eigvalsh(g)) > 0


def test_hyperbolic_norm_closed_forms():
    p = siegel_point(2j, 1.0)  # u = -1
    # purely horizontal: |a| / |u|
    assert hyperbolic_norm(TangentVector(p, (3.0, 0.0))) == pytest.approx(3.0)
    # orthogonal family (2i conj(p)^T v, v) with p = z~: 2 |v| / sqrt(|u|)
    tau = np.conj(1.0) * 0.5
    v = TangentVector(p, (2j * tau, 0.5))
    assert hyperbolic_norm(v) == pytest.approx(1.0, rel=1e-14)


def test_norm_via_matrix_equals_expanded_form(rng):
    z = sampling.siegel_coords(rng, 200, 2)
    w = sampling.tangent_vectors(rng, 200, 2)
    sq = hyperbolic_norm_sq_array(Domain.SIEGEL, z, w)
    for k in range(200):
        p = DomainPoint(Domain.SIEGEL, tuple(z[k]))
        direct = hyperbolic_norm(TangentVector(p, tuple(w[k]))) ** 2
        assert direct == pytest.approx(sq[k], rel=1e-11)


def test_tangent_push_pull_round_trip(rng):
    z = sampling.siegel_coords(rng, 100, 2)
    w = sampling.tangent_vectors(rng, 100, 2)
    ball_w = push_tangent_to_ball(z, w)
    back = pull_tangent_to_siegel(cayley_ball_coords(z), ball_w)
    np.testing.assert_allclose(back, w, rtol=0, atol=1e-10)


def test_norm_is_cayley_invariant(rng):
    z = sampling.siegel_coords(rng, 100, 2, log_u=(-1.5, 1.5), re_scale=3.0)
    w = sampling.tangent_vectors(rng, 100, 2)
    siegel_sq = hyperbolic_norm_sq_array(Domain.SIEGEL, z, w)
    ball_sq = hyperbolic_norm_sq_array(
        Domain.BALL, cayley_ball_coords(z), push_tangent_to_ball(z, w)
    )
    np.testing.assert_allclose(ball_sq, siegel_sq, rtol=1e-11)


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False,
                   allow_infinity=False)


@settings(max_examples=100, deadline=None)
@given(re=finite, im=finite)
def test_format_parse_complex_property(re, im):
    z = complex(re, im)
    back = parse_complex(format_complex(z))
    assert back == pytest.approx(z, rel=1e-14, abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    x=st.floats(min_value=-5, max_value=5, allow_nan=False),
    y=st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
    frac=st.floats(min_value=0.0, max_value=0.9, allow_nan=False),
)
def test_cayley_round_trip_property(x, y, frac):
    z2 = np.sqrt(frac * y)  # keeps Im z1 - |z2|^2 = (1-frac) y > 0
    z = np.array([[x + 1j * y, z2]])
    back = cayley_siegel_coords(cayley_ball_coords(z))
    np.testing.assert_allclose(back, z, rtol=0, atol=1e-9 * max(1.0, y))
