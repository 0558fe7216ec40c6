import numpy as np
import pytest

from superadiabatic.sampling import (
    SampledFunction,
    cumulative_integral,
    derivative,
    finite_difference,
    midpoints,
)


def sampled(f, n, tf=1.0):
    t = np.linspace(0, tf, n)
    return SampledFunction(tf, f(t)), t


def test_derivative_of_constant():
    f, _ = sampled(lambda t: np.full_like(t, 3.7), 101)
    assert np.max(np.abs(derivative(f).values)) < 1e-12


def test_derivative_of_square_is_exact():
    f, t = sampled(lambda t: t**2, 101)
    assert np.max(np.abs(derivative(f).values - 2 * t)) < 1e-10


def test_derivative_of_sine():
    f, t = sampled(lambda t: np.sin(5 * t), 2001)
    assert np.max(np.abs(derivative(f).values - 5 * np.cos(5 * t))) < 1e-8


def test_derivative_needs_five_samples():
    with pytest.raises(ValueError):
        derivative(SampledFunction(1.0, np.zeros(4)))


def test_sampled_function_rejects_bad_grid():
    with pytest.raises(ValueError):
        SampledFunction(1.0, np.zeros(2))
    with pytest.raises(ValueError):
        SampledFunction(0.0, np.zeros(5))


def test_breaks_use_one_sided_stencils():
    # |t - 1/2| has a kink at the midpoint sample
    t = np.linspace(0, 1, 101)
    f = np.abs(t - 0.5)
    mask = np.zeros(101, bool)
    mask[50] = True
    g = finite_difference(f, t[1], breaks=mask)
    np.testing.assert_allclose(g[:50], -1, atol=1e-12)
    np.testing.assert_allclose(g[51:], 1, atol=1e-12)


def test_cumulative_integral_starts_at_zero_and_is_accurate():
    t = np.linspace(0, 2, 1001)
    out = cumulative_integral(np.cos(t), t[1])
    assert out[0] == 0
    assert np.max(np.abs(out - np.sin(t))) < 1e-10


def test_midpoints_cubic_exact():
    t = np.linspace(0, 1, 11)
    m = midpoints(t**3 - t)
    tm = 0.5 * (t[1:] + t[:-1])
    np.testing.assert_allclose(m, tm**3 - tm, atol=1e-15)
