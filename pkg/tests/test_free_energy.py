import math

import numpy as np
import pytest

from orthospin.free_energy import (
    LOG16,
    NotProvenError,
    SimplexPoint,
    beta_c,
    beta_of_xstar,
    classify_phase,
    field_free_energy,
    free_energy,
    in_disordered_region,
    maximize_phi,
    one_sided_derivatives,
    phi,
    quadratic_alpha,
)
from orthospin.spectra import convert_parameters


def test_phi_examples():
    assert phi(2, 0.0, 0.0, SimplexPoint((0.5, 0.5), (0.0, 0.0))) == pytest.approx(
        math.log(2.0)
    )
    v = phi(3, 1.2, 0.7, SimplexPoint((1/3, 1/3, 1/3), (0.0, 0.0, 0.0)))
    assert v == pytest.approx((1.2 + 0.7) / 6.0 + math.log(3.0))
    v = phi(2, 1.0, 0.5, SimplexPoint((1.0, 0.0), (1.0, 0.0)))
    assert v == pytest.approx(0.5 * (1.5 - 0.5))


def test_phi_domain_validation():
    with pytest.raises(ValueError):
        phi(2, 0.0, 0.0, SimplexPoint((0.4, 0.6), (0.0, 0.0)))
    with pytest.raises(ValueError):
        phi(2, 0.0, 0.0, SimplexPoint((0.6, 0.4), (0.5, 0.0)))


def test_beta_c():
    assert beta_c(2) == 2.0
    assert beta_c(3) == pytest.approx(2.7725887222397812, abs=1e-12)
    assert beta_c(3) == pytest.approx(math.log(16.0), abs=0)
    assert beta_c(4) == pytest.approx(3.0 * math.log(3.0))


def test_beta_of_xstar():
    assert beta_of_xstar(2, 0.9) == pytest.approx(1.25 * math.log(9.0))
    # tends to beta_c from above as x drops to 1 - 1/theta
    for theta in (2, 3):
        lim = beta_of_xstar(theta, 1.0 - 1.0 / theta + 1e-7)
        assert abs(lim - beta_c(theta)) < 1e-5
    # strictly increasing
    xs = np.linspace(0.51, 0.99, 25)
    vals = [beta_of_xstar(2, float(x)) for x in xs]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        beta_of_xstar(2, 0.5)


def test_subcritical_maximizer_symmetric():
    res = maximize_phi(2, 0.9, 0.9)  # beta = 1.8 < 2
    assert len(res.points) == 1
    assert res.points[0].x == pytest.approx((0.5, 0.5), abs=1e-9)
    assert res.value == pytest.approx(math.log(2.0) + 1.8 / 4.0)


def test_two_maximizers_at_criticality_theta3():
    res = maximize_phi(3, LOG16, 0.0)
    xs = sorted(p.x[0] for p in res.points)
    assert len(xs) == 2
    assert xs[0] == pytest.approx(1.0 / 3.0, abs=1e-6)
    assert xs[1] == pytest.approx(2.0 / 3.0, abs=1e-6)
    assert res.value == pytest.approx(math.log(3.0) + LOG16 / 6.0, abs=1e-10)


def test_ising_type_maximizer_has_positive_y():
    # K1 = -6, K2 = 6: deep in the phase where the bar term dominates
    L1, L2, _ = convert_parameters("K", -6.0, 6.0, 2)
    assert L2 < 0
    res = maximize_phi(2, L1, L2)
    p = res.points[0]
    assert p.y[0] == pytest.approx(p.x[0] - p.x[1])
    assert p.y[0] > 0.5


def test_maximizer_shape_for_nonnegative_l2():
    for theta in (2, 3, 4, 5, 6):
        for beta in (0.8 * beta_c(theta), 1.25 * beta_c(theta)):
            res = maximize_phi(theta, beta, 0.0)
            for p in res.points:
                rest = p.x[1:]
                assert max(rest) - min(rest) < 1e-8, (theta, beta, p)
                assert all(v == 0.0 for v in p.y)


def test_not_proven_region():
    with pytest.raises(NotProvenError):
        maximize_phi(4, 1.0, -0.5)


def test_free_energy_values():
    assert free_energy(2, 0.0, 0.0) == pytest.approx(math.log(2.0))
    v = free_energy(3, 0.0, LOG16, mode="J")
    assert v == pytest.approx(math.log(3.0) + LOG16 / 6.0, abs=1e-9)


def test_ising_region_independent_of_k1():
    vals = [
        free_energy(2, k1, 6.0, mode="K", apply_shift=True)
        for k1 in (4.5, 5.0, 5.5, 6.0)
    ]
    assert max(vals) - min(vals) <= 1e-9


def test_argmax_invariant_under_constant_shift():
    # the shift reported by the conversions moves the value, not the argmax
    for k1, k2 in ((1.0, 6.0), (5.0, 2.0)):
        L1, L2, shift = convert_parameters("K", k1, k2, 2)
        a = maximize_phi(2, L1, L2)
        assert shift != 0.0
        b = free_energy(2, k1, k2, mode="K", apply_shift=True)
        assert b == pytest.approx(a.value - shift / 2.0)


def test_disordered_region_constancy():
    for k1 in (-3.0, 0.0, 3.9):
        for k2 in (-2.0, 1.5, 3.9):
            L1, L2, _ = convert_parameters("K", k1, k2, 2)
            res = maximize_phi(2, L1, L2)
            assert res.points[0].x == pytest.approx((0.5, 0.5), abs=1e-8)
            assert res.value == pytest.approx(math.log(2.0) + (L1 + L2) / 4.0)


def test_field_free_energy_and_derivatives():
    for K1, K2, expect_sign in ((0.0, 6.0, 1), (6.0, 0.0, 0), (6.0, 6.0, 1)):
        L1, L2, _ = convert_parameters("K", K1, K2, 2)
        up, down = one_sided_derivatives(2, L1, L2)
        assert (up > 1e-6) == bool(expect_sign)
        h = 1e-6
        fd = (field_free_energy(2, L1, L2, h) - field_free_energy(2, L1, L2, 0.0)) / h
        assert abs(fd - up) < 1e-4
    assert field_free_energy(2, 0.3, 0.2, 0.0) == pytest.approx(
        maximize_phi(2, 0.3, 0.2).value
    )


def test_transition_detectors_theta2_second_order():
    # second difference of Phi along K2=0 spikes at K1=4
    k1s = np.arange(3.0, 5.0, 0.01)
    vals = []
    for k1 in k1s:
        L1, L2, _ = convert_parameters("K", float(k1), 0.0, 2)
        vals.append(maximize_phi(2, L1, L2).value)
    second = np.abs(np.diff(vals, 2))
    k_at_spike = k1s[1 + int(np.argmax(second))]
    assert abs(k_at_spike - 4.0) <= 1e-2


def test_transition_detectors_first_order_higher_theta():
    # slope of Phi along L2=1 jumps at L1+L2 = beta_c for theta >= 3
    for theta in (3, 4, 5):
        bc = beta_c(theta)
        eps = 5e-3
        def val(l1):
            return maximize_phi(theta, l1, 1.0).value
        left = (val(bc - 1.0 - eps) - val(bc - 1.0 - 3 * eps)) / (2 * eps)
        right = (val(bc - 1.0 + 3 * eps) - val(bc - 1.0 + eps)) / (2 * eps)
        assert right - left > 0.01, theta


def test_region_r_partials_match_finite_differences():
    # gradient formulas used by the curve tracer vs numeric differentiation
    import random

    rng = random.Random(2)
    for _ in range(10):
        J1, J2 = rng.uniform(1.5, 3.0), rng.uniform(0.5, 2.5)
        x1, x2 = 0.5, 0.3  # interior of the region
        eps = 1e-6

        def f(a, b):
            x3 = 1 - a - b
            return (
                0.5 * (J2 * (-2 * a * a + b * b - 2 * a * b + 2 * a)
                       + J1 * (2 * a + b - 1) ** 2)
                - a * math.log(a) - b * math.log(b) - x3 * math.log(x3)
            )

        g1 = (f(x1 + eps, x2) - f(x1 - eps, x2)) / (2 * eps)
        g2 = (f(x1, x2 + eps) - f(x1, x2 - eps)) / (2 * eps)
        a1 = (2 * J1 - J2) * (2 * x1 + x2 - 1) - math.log(x1) + math.log(1 - x1 - x2)
        a2 = (
            J1 * (2 * x1 + x2 - 1)
            + J2 * (x2 - x1)
            - math.log(x2)
            + math.log(1 - x1 - x2)
        )
        assert abs(g1 - a1) < 1e-6 and abs(g2 - a2) < 1e-6


def test_maximize_phi_against_fine_scan_theta2():
    # independent check: the theta=2 problem is one-dimensional after the
    # closed-form inner maximisation; a 1e-6 scan pins the value to ~1e-12
    rng = np.random.default_rng(42)
    t = np.linspace(0.5, 1.0 - 1e-9, 500_001)
    ent = -(t * np.log(t) + (1 - t) * np.log(1 - t))
    ssq = t * t + (1 - t) ** 2
    for _ in range(12):
        L1, L2 = rng.uniform(-2.5, 2.5, size=2)
        y = (2 * t - 1) if L2 < 0 else np.zeros_like(t)
        vals = 0.5 * ((L1 + L2) * ssq - L2 * y * y) + ent
        brute = float(np.max(vals))
        got = maximize_phi(2, float(L1), float(L2)).value
        assert got >= brute - 1e-12
        assert abs(got - brute) < 1e-9, (L1, L2, got, brute)


def test_maximize_phi_against_fine_scan_theta3():
    # two-dimensional scan over the full ordered simplex at step 2e-4
    rng = np.random.default_rng(7)
    m = 5000
    a = np.arange(m + 1)
    x1g, x2g = np.meshgrid(a, a, sparse=False)
    x1 = x1g.ravel() / m
    x2 = x2g.ravel() / m
    x3 = 1.0 - x1 - x2
    mask = (x1 >= x2) & (x2 >= x3) & (x3 >= 0)
    x1, x2, x3 = x1[mask], x2[mask], x3[mask]

    def ent(v):
        return np.where(v > 0, -v * np.log(np.where(v > 0, v, 1.0)), 0.0)

    entropy = ent(x1) + ent(x2) + ent(x3)
    ssq = x1 * x1 + x2 * x2 + x3 * x3
    ysq = (x1 - x3) ** 2
    for _ in range(6):
        L1, L2 = rng.uniform(-2.0, 3.0, size=2)
        y = ysq if L2 < 0 else 0.0
        vals = 0.5 * ((L1 + L2) * ssq - L2 * y) + entropy
        brute = float(np.max(vals))
        got = maximize_phi(3, float(L1), float(L2)).value
        assert got >= brute - 1e-12
        assert abs(got - brute) < 1e-6, (L1, L2, got, brute)


def test_classify_phase_theta2():
    assert classify_phase(2, 0.0, 0.0).label == "Disordered"
    assert classify_phase(2, 0.0, 6.0).label == "Ising"
    assert classify_phase(2, 6.0, 0.0).label == "XY"
    assert classify_phase(2, 6.0, 6.0).label == "Boundary"
    assert classify_phase(2, 4.0, 2.0).label == "Boundary"


def test_classify_phase_theta3():
    assert classify_phase(3, 0.0, 3.0).label == "Nematic"
    assert classify_phase(3, 1.0, 1.0).label == "Disordered"
    res = classify_phase(3, 3.25, 1.5)
    assert res.label == "Ferromagnetic" and res.conjectured
    res = classify_phase(3, -1.0, -6.0)
    assert res.label == "FourthPhase" and res.conjectured
    res = classify_phase(3, 0.0, -6.0)
    assert res.label == "Boundary" and "NOT_PROVEN" in res.note


def test_classify_phase_higher_theta():
    assert classify_phase(4, 1.0, 1.0, mode="L").label == "Disordered"
    assert classify_phase(4, 3.0, 1.0, mode="L").label == "Ordered"
    with pytest.raises(NotProvenError):
        classify_phase(5, 1.0, -1.0, mode="L")


def test_quadratic_alpha():
    assert quadratic_alpha(-1.0, -4.0) == pytest.approx(0.8)
    assert quadratic_alpha(5.0, 1.0) == 1.0
    assert quadratic_alpha(-2.0, -4.0) == pytest.approx(2.0 / 3.0)
    with pytest.raises(ValueError):
        quadratic_alpha(-1.0, 2.0)


def test_in_disordered_region_simple_points():
    assert in_disordered_region(2.0, 1.5)
    assert not in_disordered_region(2.0, 0.5)


def test_symmetric_point_local_max_threshold():
    # the Hessian of the wedge functional at the symmetric point is negative
    # semidefinite exactly up to 2 J1 - J2 = 3
    def hessian(J1, J2):
        x1 = x2 = x3 = 1.0 / 3.0
        h11 = 2 * (2 * J1 - J2) - 1.0 / x1 - 1.0 / x3
        h12 = (2 * J1 - J2) - 1.0 / x3
        h22 = J1 + J2 - 1.0 / x2 - 1.0 / x3
        return np.array([[h11, h12], [h12, h22]])

    for J2 in (-1.0, 0.5, 1.4):
        below = np.linalg.eigvalsh(hessian((J2 + 3.0) / 2.0 - 0.05, J2))
        above = np.linalg.eigvalsh(hessian((J2 + 3.0) / 2.0 + 0.05, J2))
        assert below[-1] < 0
        assert above[-1] > 0
    # and the membership predicate flips across the half-line J2 = 2 J1 - 3
    assert in_disordered_region(2.0, 1.0 + 1e-3)
    assert not in_disordered_region(2.0, 1.0 - 1e-3)


def test_exit_directions_absorbing():
    # once outside the disordered region, moving along mu*(1,2) + nu*(-1,-3)
    # (mu, nu >= 0) stays outside
    start = (2.3, 1.55)  # just outside the arc
    assert not in_disordered_region(*start)
    for v in ((1.0, 2.0), (-1.0, -3.0), (0.0, -1.0)):
        pt = (start[0] + 0.1 * v[0], start[1] + 0.1 * v[1])
        if pt[0] >= pt[1]:
            assert not in_disordered_region(*pt), (v, pt)
