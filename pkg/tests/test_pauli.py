import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superadiabatic.pauli import (
    SIGMA_X,
    CartesianTriple,
    SphericalTriple,
    compose,
    dagger,
    decompose,
    eigensystem,
    frame_rotation,
    from_spherical,
    is_unitary,
    rotation_matrix,
    to_spherical,
)

finite = st.floats(-1e3, 1e3, allow_nan=False)
angles = st.floats(0, 2 * np.pi)


def test_compose_zero():
    np.testing.assert_array_equal(compose(CartesianTriple(0, 0, 0)), np.zeros((2, 2)))


def test_compose_sigma_x():
    np.testing.assert_array_equal(compose(CartesianTriple(1, 0, 0)), SIGMA_X)


def test_compose_lz_hamiltonian():
    # Omega_R = 0.2, Delta = 1: x = 0.1, z = -0.5
    np.testing.assert_allclose(
        compose(CartesianTriple(0.1, 0, -0.5)), [[-0.5, 0.1], [0.1, 0.5]]
    )


def test_compose_decompose_roundtrip_on_arrays():
    c = CartesianTriple(np.arange(3.0), -np.arange(3.0), np.ones(3))
    back = decompose(compose(c))
    for a, b in zip(c, back):
        np.testing.assert_allclose(a, b)


def test_spherical_north_pole():
    s = to_spherical(CartesianTriple(0.0, 0.0, 1.0))
    assert s.theta == 0 and s.r == 1 and s.degenerate


def test_spherical_diagonal():
    s = to_spherical(CartesianTriple(1.0, 1.0, 0.0))
    assert s.theta == pytest.approx(np.pi / 2)
    assert s.phi == pytest.approx(np.pi / 4)
    assert s.r == pytest.approx(np.sqrt(2))


def test_spherical_lz_midpoint():
    s = to_spherical(CartesianTriple(0.1, 0.0, 0.0))
    assert (s.theta, s.phi, s.r) == pytest.approx((np.pi / 2, 0.0, 0.1))


def test_spherical_zero_vector_is_south_pole():
    assert to_spherical(CartesianTriple(0.0, 0.0, 0.0)).theta == np.pi


def test_degenerate_azimuth_carried_forward():
    x = np.array([0.0, 1.0, 0.0, 0.0, -1.0])
    y = np.array([0.0, 1.0, 0.0, 0.0, 0.0])
    s = to_spherical(CartesianTriple(x, y, np.ones(5)))
    np.testing.assert_allclose(s.phi, [0, np.pi / 4, np.pi / 4, np.pi / 4, np.pi])
    np.testing.assert_array_equal(s.degenerate, [True, False, True, True, False])


def test_eigensystem_south_pole_is_bare_basis():
    v1, v2, e1, e2 = eigensystem(SphericalTriple(np.pi, 0.0, 1.0, False))
    np.testing.assert_allclose(v1, [1, 0], atol=1e-16)
    np.testing.assert_allclose(v2, [0, 1], atol=1e-16)
    assert (e1, e2) == (-1.0, 1.0)


def test_eigensystem_north_pole_swaps():
    v1, v2, _, _ = eigensystem(SphericalTriple(0.0, 0.0, 1.0, False))
    np.testing.assert_allclose(v1, [0, -1], atol=1e-16)
    np.testing.assert_allclose(v2, [1, 0], atol=1e-16)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, np.pi), angles, angles, st.floats(0.01, 100))
def test_eigensystem_solves_eigenproblem(theta, phi, eps, r):
    s = SphericalTriple(theta, phi, r, False)
    h = compose(from_spherical(s))
    v1, v2, e1, e2 = eigensystem(s, eps)
    assert np.max(np.abs(h @ v1 - e1 * v1)) < 1e-12 * max(r, 1)
    assert np.max(np.abs(h @ v2 - e2 * v2)) < 1e-12 * max(r, 1)
    assert abs(np.vdot(v1, v2)) < 1e-12
    assert abs(np.linalg.norm(v1) - 1) < 1e-12


def test_frame_rotation_identity():
    np.testing.assert_allclose(frame_rotation(np.pi, 0.0, 0.0), np.eye(2), atol=1e-16)


def test_frame_rotation_substitution():
    # theta = pi/2, phi = 3pi/2, eps = 0 substituted by hand
    h = 1 / np.sqrt(2)
    expected = np.array(
        [
            [h * cmath.exp(-3j * np.pi / 4), h * cmath.exp(-3j * np.pi / 4)],
            [-h * cmath.exp(3j * np.pi / 4), h * cmath.exp(3j * np.pi / 4)],
        ]
    )
    a = frame_rotation(np.pi / 2, 3 * np.pi / 2, 0.0)
    np.testing.assert_allclose(a, expected, atol=1e-15)
    # entries are e^{+-i pi/4}/sqrt2 up to sign, and columns diagonalize -sigma_y
    np.testing.assert_allclose(np.abs(a), h)
    hy = compose(CartesianTriple(0.0, -1.0, 0.0))
    np.testing.assert_allclose(hy @ a[:, 0], -a[:, 0], atol=1e-15)
    np.testing.assert_allclose(hy @ a[:, 1], a[:, 1], atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, np.pi), angles, st.floats(-10, 10))
def test_frame_rotation_unitary(theta, phi, eps):
    a = frame_rotation(theta, phi, eps)
    np.testing.assert_allclose(a @ dagger(a), np.eye(2), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(finite, finite, finite)
def test_spherical_roundtrip(x, y, z):
    c = CartesianTriple(x, y, z)
    s = to_spherical(c)
    assert 0 <= s.theta <= np.pi and 0 <= s.phi < 2 * np.pi and s.r >= 0
    np.testing.assert_allclose(compose(from_spherical(s)), compose(c), atol=1e-12 * max(s.r, 1))
    assert np.cos(s.theta) * s.r == pytest.approx(z, abs=1e-12 * max(s.r, 1))
    assert np.sin(s.theta) * s.r == pytest.approx(np.hypot(x, y), abs=1e-12 * max(s.r, 1))


def test_rotation_matrix_of_sigma_x_flips_y_and_z():
    np.testing.assert_allclose(rotation_matrix(SIGMA_X), np.diag([1.0, -1.0, -1.0]), atol=1e-15)


def test_is_unitary():
    assert is_unitary(SIGMA_X)
    assert not is_unitary(2 * SIGMA_X)
