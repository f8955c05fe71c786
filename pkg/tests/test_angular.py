import math

import numpy as np
import pytest

from hespinor import angular
from hespinor.operators import ModelParams, apply_M, component_system_residual


@pytest.fixture(scope="module")
def params():
    return ModelParams(sigma=0.23)


def unit_profiles():
    one = angular.RadialProfile(value=lambda r1, r2: 1.0,
                                d_r1=lambda r1, r2: 0.0,
                                d_r2=lambda r1, r2: 0.0)
    return [one] * 4


def smooth_profiles():
    """Generic smooth profiles unrelated to any exact solution."""
    return [
        angular.RadialProfile(
            value=lambda r1, r2: math.exp(-((r1 - 1.0) ** 2 + (r2 - 1.3) ** 2) / 2),
            d_r1=lambda r1, r2: -(r1 - 1.0) * math.exp(-((r1 - 1.0) ** 2 + (r2 - 1.3) ** 2) / 2),
            d_r2=lambda r1, r2: -(r2 - 1.3) * math.exp(-((r1 - 1.0) ** 2 + (r2 - 1.3) ** 2) / 2),
        ),
        angular.RadialProfile.power_exponential(0.8, 1.0, 0.5, 0.9, 0.4),
        angular.RadialProfile.power_exponential(-0.6, 0.5, 1.0, 0.7, 0.8),
        angular.RadialProfile(
            value=lambda r1, r2: math.exp(-0.8 * r1 - 1.1 * r2) * (1 + 0.3 * r2),
            d_r1=lambda r1, r2: -0.8 * math.exp(-0.8 * r1 - 1.1 * r2) * (1 + 0.3 * r2),
            d_r2=lambda r1, r2: math.exp(-0.8 * r1 - 1.1 * r2) * (0.3 - 1.1 * (1 + 0.3 * r2)),
        ),
    ]


ANGLES = [(0.1 + 0.7 * k, 0.4 + 1.1 * k) for k in range(8)]


def test_canonical_pairs():
    a = angular.PhaseAssignment.canonical(1.0, 1.0)
    assert a.pairs == ((1.5, 1.5), (0.5, 0.5), (0.5, 1.5), (1.5, 0.5))
    assert a.in_half_step_band(1.0, 1.0)


def test_build_spinor_at_zero_angles():
    spinor = angular.build_spinor(angular.PhaseAssignment.canonical(1.0, 1.0), unit_profiles())
    p = angular.point_from_polar(1.0, 0.0, 1.0, 0.0)
    assert np.allclose(spinor(p), np.ones(4), atol=1e-15)


def test_build_spinor_phase_value():
    # first component at theta1 = pi, theta2 = 0: exp(i 3pi/2) = -i
    spinor = angular.build_spinor(angular.PhaseAssignment.canonical(1.0, 1.0), unit_profiles())
    p = angular.point_from_polar(1.0, math.pi, 1.0, 0.0)
    assert spinor(p)[0] == pytest.approx(-1j, abs=1e-12)


def test_built_spinor_is_m_eigenstate():
    # every component carries M eigenvalue j1 + j2
    profiles = [angular.RadialProfile.power_exponential(1.0, 0.6, 0.7, 1.0, 0.8)] * 4
    spinor = angular.build_spinor(angular.PhaseAssignment.canonical(1.0, 1.0), profiles)
    p = angular.point_from_polar(0.9, 0.52, 1.2, -1.1)
    out = apply_M(spinor, p, 1e-5)
    ratios = out / spinor(p)
    assert np.allclose(ratios, 2.0, atol=1e-8)


def test_separation_residual_cancels_for_generic_profiles(params):
    profiles = smooth_profiles()
    assignment = angular.PhaseAssignment.canonical(params.j1, params.j2)
    rng = np.random.default_rng(7)
    for r1, r2 in rng.uniform(0.6, 1.6, (10, 2)):
        scale = max(abs(prof.value(r1, r2)) for prof in profiles)
        spread = angular.separation_residual(params, assignment, profiles, 1.1,
                                             ANGLES, (r1, r2), 0.86, step=1e-5)
        assert spread <= 1e-8 * scale


def test_separation_zero_profiles(params):
    assignment = angular.PhaseAssignment.canonical(params.j1, params.j2)
    zeros = [angular.RadialProfile.zero()] * 4
    spread = angular.separation_residual(params, assignment, zeros, 1.1,
                                         ANGLES, (0.9, 1.2), 0.86, step=1e-5)
    assert spread == 0.0


def test_separation_single_angle_sample(params):
    assignment = angular.PhaseAssignment.canonical(params.j1, params.j2)
    spread = angular.separation_residual(params, assignment, smooth_profiles(), 1.1,
                                         [(0.3, 1.0)], (0.9, 1.2), 0.86, step=1e-5)
    assert spread == 0.0


def test_mixed_sign_assignment_does_not_cancel(params):
    mixed = angular.PhaseAssignment(pairs=(
        (params.j1 + 0.5, -(params.j2 + 0.5)),
        (params.j1 - 0.5, params.j2 + 0.5),
        (params.j1 - 0.5, params.j2 - 0.5),
        (params.j1 + 0.5, -(params.j2 - 0.5)),
    ))
    spread = angular.separation_residual(params, mixed, smooth_profiles(), 1.1,
                                         ANGLES, (0.9, 1.2), 0.86, step=1e-5)
    assert spread > 1e-2


def test_radial_rows_match_angle_frozen_path(params):
    profiles = smooth_profiles()
    assignment = angular.PhaseAssignment.canonical(params.j1, params.j2)
    spinor = angular.build_spinor(assignment, profiles)
    energy, rho0, step = 1.1, 0.86, 1e-5
    for theta1, theta2 in ((0.4, 1.1), (2.0, -1.2), (-2.3, 0.7)):
        rp = (0.95, 1.25)
        p = angular.point_from_polar(rp[0], theta1, rp[1], theta2)
        fd = component_system_residual(params, spinor, p, step, energy, rho_freeze=rho0)
        fd = fd / assignment.phase_vector(p.theta1, p.theta2)
        exact = angular.radial_system_residual(params, profiles, energy, rho0, rp)
        assert np.abs(fd - exact).max() < 50 * step**2


def test_radial_rows_zero_profiles(params):
    zeros = [angular.RadialProfile.zero()] * 4
    rows = angular.radial_system_residual(params, zeros, 1.1, 0.86, (0.9, 1.2))
    assert np.array_equal(rows, np.zeros(4))


def test_radial_rows_sigma_one_keeps_only_electron2_terms():
    params1 = ModelParams(sigma=1.0)
    profiles = smooth_profiles()
    r1, r2 = 0.9, 1.2
    energy, rho0 = 1.1, 0.86
    rows = angular.radial_system_residual(params1, profiles, energy, rho0, (r1, r2))
    from hespinor.operators import potential_radii
    phi = potential_radii(params1, r1, r2, rho0)
    qp = 2 * params1.m + (phi - energy)
    qm = 2 * params1.m - (phi - energy)
    f = [prof.value(r1, r2) for prof in profiles]
    d2 = [prof.d_r2(r1, r2) for prof in profiles]
    j2 = params1.j2
    expected = np.array([
        qp * f[0] - 2 * (d2[3] - (j2 - 0.5) / r2 * f[3]),
        qp * f[1] - 2 * (d2[2] + (j2 + 0.5) / r2 * f[2]),
        qm * f[2] - 2 * (d2[1] - (j2 - 0.5) / r2 * f[1]),
        qm * f[3] - 2 * (d2[0] + (j2 + 0.5) / r2 * f[0]),
    ])
    assert np.allclose(rows, expected, rtol=0, atol=1e-15)


def test_radial_rows_sigma_zero_is_one_electron_system():
    params0 = ModelParams(sigma=0.0)
    profiles = smooth_profiles()
    r1, r2 = 0.9, 1.2
    energy, rho0 = 0.9, 0.86
    rows = angular.radial_system_residual(params0, profiles, energy, rho0, (r1, r2))
    from hespinor.operators import potential_radii
    phi = potential_radii(params0, r1, r2, rho0)
    qp = params0.m + (phi - energy)
    qm = params0.m - (phi - energy)
    f = [prof.value(r1, r2) for prof in profiles]
    d1 = [prof.d_r1(r1, r2) for prof in profiles]
    j1 = params0.j1
    expected = np.array([
        qp * f[0] - (d1[2] - (j1 - 0.5) / r1 * f[2]),
        qp * f[1] + (d1[3] + (j1 + 0.5) / r1 * f[3]),
        qm * f[2] - (d1[0] + (j1 + 0.5) / r1 * f[0]),
        qm * f[3] + (d1[1] - (j1 - 0.5) / r1 * f[1]),
    ])
    assert np.allclose(rows, expected, rtol=0, atol=1e-15)


def test_radial_rows_reject_nonpositive_radii(params):
    with pytest.raises(ValueError):
        angular.radial_system_residual(params, smooth_profiles(), 1.0, 0.86, (0.0, 1.0))


def test_find_cancelling_assignments_unique_in_band():
    ladder = angular.find_cancelling_assignments(1.0, 1.0)
    assert len(ladder) == 9  # whole-winding shifts of one solution
    in_band = [a for a in ladder if a.in_half_step_band(1.0, 1.0)]
    assert in_band == [angular.PhaseAssignment.canonical(1.0, 1.0)]


def test_phase_assignment_needs_four_pairs():
    with pytest.raises(ValueError):
        angular.PhaseAssignment(pairs=((1.5, 1.5),))
