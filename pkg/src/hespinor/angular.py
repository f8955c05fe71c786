"""Angular eigenfunction ansatz and separation of the component system.

Each spinor component is written f_k(r1, r2) * exp(i Phi_k) with phase
Phi_k = m1_k theta1 + m2_k theta2.  For the accepted coefficient
assignment the angular dependence cancels row by row from the component
system (with the interelectron distance frozen), leaving a purely radial
system whose rows are evaluated here in closed form as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np

from .operators import (
    ConfigPoint,
    ModelParams,
    SpinorField,
    component_system_residual,
    potential_radii,
)


@dataclass(frozen=True)
class PhaseAssignment:
    """Four (theta1, theta2) winding coefficient pairs, one per component."""

    pairs: tuple

    def __post_init__(self):
        if len(self.pairs) != 4:
            raise ValueError("a phase assignment needs exactly four coefficient pairs")

    @classmethod
    def canonical(cls, j1: float, j2: float) -> "PhaseAssignment":
        """The unique assignment with coefficients in {j +- 1/2} for which
        the angular dependence cancels and every component carries the same
        M eigenvalue j1 + j2."""
        return cls(
            pairs=(
                (j1 + 0.5, j2 + 0.5),
                (j1 - 0.5, j2 - 0.5),
                (j1 - 0.5, j2 + 0.5),
                (j1 + 0.5, j2 - 0.5),
            )
        )

    def phase_vector(self, theta1: float, theta2: float) -> np.ndarray:
        return np.exp(
            1j * (np.array([p[0] for p in self.pairs]) * theta1
                  + np.array([p[1] for p in self.pairs]) * theta2)
        )

    def in_half_step_band(self, j1: float, j2: float, tol: float = 1e-12) -> bool:
        """True when every coefficient differs from its j by exactly +-1/2."""
        return all(
            min(abs(m1 - (j1 - 0.5)), abs(m1 - (j1 + 0.5))) <= tol
            and min(abs(m2 - (j2 - 0.5)), abs(m2 - (j2 + 0.5))) <= tol
            for m1, m2 in self.pairs
        )


@dataclass(frozen=True)
class RadialProfile:
    """Radial factor of one spinor component with its analytic partials."""

    value: Callable[[float, float], float]
    d_r1: Callable[[float, float], float]
    d_r2: Callable[[float, float], float]

    @classmethod
    def power_exponential(cls, coef, s1, s2, beta1, beta2) -> "RadialProfile":
        """coef * r1^s1 * r2^s2 * exp(-beta1 r1 - beta2 r2)."""

        def value(r1, r2):
            return coef * r1**s1 * r2**s2 * math.exp(-beta1 * r1 - beta2 * r2)

        def d_r1(r1, r2):
            return (s1 / r1 - beta1) * value(r1, r2)

        def d_r2(r1, r2):
            return (s2 / r2 - beta2) * value(r1, r2)

        return cls(value=value, d_r1=d_r1, d_r2=d_r2)

    @classmethod
    def zero(cls) -> "RadialProfile":
        return cls(value=lambda r1, r2: 0.0, d_r1=lambda r1, r2: 0.0, d_r2=lambda r1, r2: 0.0)


def build_spinor(assignment: PhaseAssignment, profiles) -> SpinorField:
    """Assemble the four-spinor f_k(r1, r2) exp(i Phi_k(theta1, theta2))."""
    if len(profiles) != 4:
        raise ValueError("need one radial profile per spinor component")

    def fn(p: ConfigPoint) -> np.ndarray:
        r1, r2 = p.r1, p.r2
        values = np.array([prof.value(r1, r2) for prof in profiles], dtype=complex)
        return values * assignment.phase_vector(p.theta1, p.theta2)

    return SpinorField(fn)


def point_from_polar(r1, theta1, r2, theta2) -> ConfigPoint:
    return ConfigPoint(
        r1 * math.cos(theta1), r1 * math.sin(theta1),
        r2 * math.cos(theta2), r2 * math.sin(theta2),
    )


def separation_residual(params: ModelParams, assignment: PhaseAssignment, profiles,
                        energy, angle_samples, radial_point, rho0, step) -> float:
    """Angle spread of the phase-stripped component residuals at fixed radii.

    For each (theta1, theta2) sample, the four component equations are
    evaluated by finite differences with the interelectron distance frozen
    at rho0 and divided componentwise by exp(i Phi_k).  Full angular
    cancellation means the results agree across all samples; the returned
    number is the largest componentwise deviation from the first sample.

    The stripping phases are computed from the constructed point's own
    atan2 angles: with half-integer winding coefficients the raw sample
    angle and its principal value can differ by 2 pi, which flips the
    phase sign.
    """
    r1, r2 = radial_point
    field = build_spinor(assignment, profiles)
    values = []
    for theta1, theta2 in angle_samples:
        p = point_from_polar(r1, theta1, r2, theta2)
        res = component_system_residual(params, field, p, step, energy, rho_freeze=rho0)
        values.append(res / assignment.phase_vector(p.theta1, p.theta2))
    if len(values) <= 1:
        return 0.0
    stack = np.array(values)
    return float(np.abs(stack - stack[0]).max())


def radial_system_residual(params: ModelParams, profiles, energy, rho0, point) -> np.ndarray:
    """Four rows of the separated radial system, via analytic derivatives.

    Agrees with the angle-independent value produced by
    ``separation_residual`` up to the O(step^2) finite-difference error of
    the latter.
    """
    r1, r2 = point
    if r1 <= 0 or r2 <= 0:
        raise ValueError("radial evaluation needs r1 > 0 and r2 > 0")
    s, j1, j2 = params.sigma, params.j1, params.j2
    phi = potential_radii(params, r1, r2, rho0)
    qp = (1 + s) * params.m + (phi - energy)
    qm = (1 + s) * params.m - (phi - energy)
    f = [prof.value(r1, r2) for prof in profiles]
    d1 = [prof.d_r1(r1, r2) for prof in profiles]
    d2 = [prof.d_r2(r1, r2) for prof in profiles]
    w1, w2 = 1 - s, 2 * s
    return np.array(
        [
            qp * f[0] - w1 * (d1[2] - (j1 - 0.5) / r1 * f[2]) - w2 * (d2[3] - (j2 - 0.5) / r2 * f[3]),
            qp * f[1] + w1 * (d1[3] + (j1 + 0.5) / r1 * f[3]) - w2 * (d2[2] + (j2 + 0.5) / r2 * f[2]),
            qm * f[2] - w1 * (d1[0] + (j1 + 0.5) / r1 * f[0]) - w2 * (d2[1] - (j2 - 0.5) / r2 * f[1]),
            qm * f[3] + w1 * (d1[1] - (j1 - 0.5) / r1 * f[1]) - w2 * (d2[0] + (j2 + 0.5) / r2 * f[0]),
        ]
    )


def find_cancelling_assignments(j1: float, j2: float) -> list:
    """Enumerate winding assignments that cancel the angular dependence.

    Candidates draw each coefficient from {+-(j - 1/2), +-(j + 1/2)}.  A
    candidate cancels exactly when the row phases match term by term:

        Phi1 - Phi3 = theta1     Phi4 - Phi2 = theta1
        Phi3 - Phi2 = theta2     Phi1 - Phi4 = theta2

    Solutions come in ladders shifted by whole windings; exactly one lies
    in the (j +- 1/2) band and ``PhaseAssignment.canonical`` returns it.
    """
    m1_opts = {j1 - 0.5, j1 + 0.5, -(j1 - 0.5), -(j1 + 0.5)}
    m2_opts = {j2 - 0.5, j2 + 0.5, -(j2 - 0.5), -(j2 + 0.5)}

    def close(a, b):
        return abs(a - b) <= 1e-12

    found = []
    for pairs in product(product(m1_opts, m2_opts), repeat=4):
        (m11, m21), (m12, m22), (m13, m23), (m14, m24) = pairs
        if not (close(m11 - m13, 1) and close(m21, m23)):
            continue
        if not (close(m14 - m12, 1) and close(m24, m22)):
            continue
        if not (close(m23 - m22, 1) and close(m13, m12)):
            continue
        if not (close(m21 - m24, 1) and close(m11, m14)):
            continue
        found.append(PhaseAssignment(pairs=pairs))
    return found
