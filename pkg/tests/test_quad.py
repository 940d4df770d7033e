"""Quadrature engine: rules, transforms, nesting, sphere, gamma."""

import math

import numpy as np
import pytest

from qsiegel.quad import (QuadratureSpec, QuadratureError, integrate_1d,
                          integrate_nested, integrate_sphere2, gauss_rule,
                          sphere2_nodes, gamma)
from qsiegel.quat import Quaternion


def _ts(spec):
    from dataclasses import replace
    return replace(spec, transform="tanh_sinh")


def test_spec_validates_transform():
    with pytest.raises(ValueError):
        QuadratureSpec(transform="legendre")


def test_gauss_rule_polynomial_exactness():
    # an n-point rule integrates degree 2n-1 exactly
    x, w = gauss_rule(6, -1.0, 2.0)
    for deg in range(12):
        exact = (2.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
        assert abs(np.sum(w * x ** deg) - exact) <= 1e-12 * abs(exact)


def test_integrate_1d_smooth(spec):
    res = integrate_1d(math.exp, (0.0, 1.0), spec)
    assert res.converged
    assert abs(res.value - (math.e - 1.0)) <= 1e-12 * (math.e - 1.0)
    assert res.error <= 1e-9 * res.value


def test_integrate_1d_interval_validation(spec):
    with pytest.raises(ValueError):
        integrate_1d(math.exp, (1.0, 1.0), spec)


def test_integrate_1d_semi_infinite_gaussian(spec):
    res = integrate_1d(lambda s: math.exp(-s * s), (0.0, math.inf), spec)
    assert res.converged
    assert abs(res.value - 0.5 * math.sqrt(math.pi)) <= 1e-10


def test_integrate_1d_tanh_sinh_matches_exp_map(spec):
    f = lambda s: s * math.exp(-2.0 * s)
    a = integrate_1d(f, (0.0, math.inf), spec).value
    b = integrate_1d(f, (0.0, math.inf), _ts(spec)).value
    assert abs(a - 0.25) <= 1e-10
    assert abs(b - 0.25) <= 1e-10


def test_tanh_sinh_algebraic_tail(spec):
    # 1/(1+s^2)^2 decays too slowly for the exponential map but is exact
    # under the double-exponential transform
    res = integrate_1d(lambda s: (1.0 + s * s) ** -2, (0.0, math.inf), _ts(spec))
    assert res.converged
    assert abs(res.value - math.pi / 4.0) <= 1e-10


def test_integrate_1d_doubly_infinite(spec):
    res = integrate_1d(lambda s: math.exp(-s * s), (-math.inf, math.inf), spec)
    assert abs(res.value - math.sqrt(math.pi)) <= 1e-9


def test_integrate_1d_vector_valued(spec):
    # int_0^inf s exp(-sA) ds = A^-2 for A = 2 + 3i: split into re/im
    def f(s):
        e = math.exp(-2.0 * s)
        return np.array([s * e * math.cos(3.0 * s), -s * e * math.sin(3.0 * s)])

    res = integrate_1d(f, (0.0, math.inf), spec)
    expected = np.array([-5.0, -12.0]) / 169.0
    np.testing.assert_allclose(res.value, expected, rtol=0, atol=1e-11)


def test_integrate_1d_deterministic(spec):
    f = lambda s: math.sin(s) / (1.0 + s * s)
    a = integrate_1d(f, (0.0, 10.0), spec)
    b = integrate_1d(f, (0.0, 10.0), spec)
    assert a.value == b.value and a.error == b.error


def test_integrate_1d_budget_exhaustion():
    tiny = QuadratureSpec(rel_tol=1e-15, abs_tol=1e-300, max_subdivisions=2)
    res = integrate_1d(lambda s: math.exp(-s) * math.sin(40.0 * s), (0.0, 30.0), tiny)
    assert not res.converged


def test_integrate_nested_fubini(spec):
    res = integrate_nested(((0.0, 1.0), (0.0, 2.0)),
                           lambda x, y: math.exp(-x - y), spec)
    exact = (1.0 - math.exp(-1.0)) * (1.0 - math.exp(-2.0))
    assert res.converged
    assert abs(res.value - exact) <= 1e-9 * exact


def test_integrate_nested_semi_infinite(spec):
    res = integrate_nested(((0.0, math.inf), (0.0, math.inf)),
                           lambda x, y: math.exp(-x * x - y * y), spec)
    assert abs(res.value - math.pi / 4.0) <= 1e-7


def test_sphere_nodes_weights():
    nodes, w = sphere2_nodes(16)
    assert nodes.shape == (len(w), 3)
    np.testing.assert_allclose(np.linalg.norm(nodes, axis=1), 1.0, atol=1e-14)
    assert abs(np.sum(w) - 4.0 * math.pi) <= 1e-12
    # odd moments vanish, second moments are 4pi/3 delta_ij
    np.testing.assert_allclose(w @ nodes, 0.0, atol=1e-13)
    sec = nodes.T @ (w[:, None] * nodes)
    np.testing.assert_allclose(sec, (4.0 * math.pi / 3.0) * np.eye(3), atol=1e-12)


def test_sphere_rule_spherical_harmonic_exactness():
    nodes, w = sphere2_nodes(8)
    # degree-4 polynomial: int n1^4 = 4pi/5
    assert abs(np.sum(w * nodes[:, 0] ** 4) - 4.0 * math.pi / 5.0) <= 1e-12


def test_integrate_sphere2_scalar(spec):
    val, err = integrate_sphere2(lambda n: 1.0 + n[2] ** 2, spec)
    exact = 4.0 * math.pi + 4.0 * math.pi / 3.0
    assert abs(val - exact) <= 1e-10
    assert err <= 1e-10


def test_integrate_sphere2_quaternion(spec):
    val, err = integrate_sphere2(
        lambda n: Quaternion(n[0] * n[0], n[0], n[1], n[2]), spec)
    assert isinstance(val, Quaternion)
    assert abs(val.t - 4.0 * math.pi / 3.0) <= 1e-10
    assert val.imag_norm() <= 1e-12


def test_gamma_against_stdlib():
    for x in (0.5, 1.0, 1.5, 2.0, 3.7, 7.25, 11.0, 0.1, 20.5):
        assert abs(gamma(x) - math.gamma(x)) <= 1e-12 * math.gamma(x)


def test_gamma_reflection_negative_argument():
    for x in (-0.5, -1.5, -2.3):
        assert abs(gamma(x) - math.gamma(x)) <= 1e-11 * abs(math.gamma(x))


def test_gamma_recurrence():
    x = 3.6
    assert abs(gamma(x + 1.0) - x * gamma(x)) <= 1e-12 * gamma(x + 1.0)


def test_gamma_poles():
    for x in (0.0, -1.0, -5.0):
        with pytest.raises(ValueError):
            gamma(x)
