"""Gamma-matrix tables and exact verification of their algebra.

The model is built on five mutually anticommuting, unitary 4x4 matrices
indexed 0, 1, 2, 3, 5.  They satisfy the all-plus relation

    gamma(mu) gamma(nu) + gamma(nu) gamma(mu) = 2 delta_{mu,nu} I

so every one of them squares to +I.  All entries are 0, +-1 or +-1j, so
the relations hold to machine exactness and the checks below compare
entrywise with an explicit absolute tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GAMMA_INDICES = (0, 1, 2, 3, 5)

# Block convention: gamma(0) = diag(I2, -I2); gamma(k) for k = 1, 2, 3 has
# upper-right block +i*sigma_k and lower-left block -i*sigma_k with the
# standard Pauli matrices; gamma(5) has identity off-diagonal blocks.
_GAMMA_TABLES = {
    0: np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, -1, 0],
            [0, 0, 0, -1],
        ],
        dtype=complex,
    ),
    1: np.array(
        [
            [0, 0, 0, 1j],
            [0, 0, 1j, 0],
            [0, -1j, 0, 0],
            [-1j, 0, 0, 0],
        ],
        dtype=complex,
    ),
    2: np.array(
        [
            [0, 0, 0, 1],
            [0, 0, -1, 0],
            [0, -1, 0, 0],
            [1, 0, 0, 0],
        ],
        dtype=complex,
    ),
    3: np.array(
        [
            [0, 0, 1j, 0],
            [0, 0, 0, -1j],
            [-1j, 0, 0, 0],
            [0, 1j, 0, 0],
        ],
        dtype=complex,
    ),
    5: np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
        ],
        dtype=complex,
    ),
}

# Spin projections entering M = Jz + (alpha_1z + alpha_2z)/2, as explicit
# block matrices: alpha_z(1) = diag(-sigma_z, sigma_z) = -i g5 g3 and
# alpha_z(2) = diag(-sigma_z, -sigma_z) = -i g2 g1.  Note the electron-2
# product order: -i g1 g2 gives the opposite sign and is *not* used.
_ALPHA_Z = {
    1: np.diag([-1.0, 1.0, 1.0, -1.0]).astype(complex),
    2: np.diag([-1.0, 1.0, -1.0, 1.0]).astype(complex),
}


def gamma(idx: int) -> np.ndarray:
    """Return a copy of the gamma matrix with the given index (0, 1, 2, 3 or 5)."""
    if idx not in _GAMMA_TABLES:
        raise ValueError(f"gamma index must be one of {GAMMA_INDICES}, got {idx!r}")
    return _GAMMA_TABLES[idx].copy()


def alpha_z(which: int) -> np.ndarray:
    """Return the z spin projection matrix of electron 1 or 2."""
    if which not in (1, 2):
        raise ValueError(f"electron label must be 1 or 2, got {which!r}")
    return _ALPHA_Z[which].copy()


def spin_shift_matrix() -> np.ndarray:
    """(alpha_z(1) + alpha_z(2)) / 2 = diag(-1, 1, 0, 0)."""
    return 0.5 * (_ALPHA_Z[1] + _ALPHA_Z[2])


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def mats_close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Entrywise comparison with an absolute tolerance (all entries are O(1))."""
    return bool(np.abs(np.asarray(a) - np.asarray(b)).max() <= tol)


def gamma_product_phase() -> complex:
    """Scalar c such that gamma(5) == c * gamma(0)gamma(1)gamma(2)gamma(3) exactly.

    With the table convention above the product equals -gamma(5), i.e. the
    phase is -1 (the frequently quoted -1j prefactor does not reproduce the
    tabulated gamma(5) for this block convention; see the verify report).
    """
    prod = _GAMMA_TABLES[0] @ _GAMMA_TABLES[1] @ _GAMMA_TABLES[2] @ _GAMMA_TABLES[3]
    g5 = _GAMMA_TABLES[5]
    # both matrices have the same support; read the phase off one entry
    idx = np.unravel_index(np.argmax(np.abs(g5)), g5.shape)
    c = g5[idx] / prod[idx]
    if not np.array_equal(c * prod, g5):
        raise ArithmeticError("gamma(5) is not proportional to the product of the other four")
    return complex(c)


@dataclass(frozen=True)
class CliffordReport:
    """Outcome of the pairwise anticommutation check."""

    rows: tuple  # (mu, nu, max deviation) for each unordered pair
    tolerance: float
    passed: bool

    def worst(self):
        return max(self.rows, key=lambda r: r[2])


def verify_clifford(tolerance: float, gammas=None) -> CliffordReport:
    """Check {gamma(mu), gamma(nu)} = 2 delta I for all 15 unordered pairs.

    ``gammas`` may supply an alternative index -> matrix table (used by the
    fault-injection checks); by default the module tables are verified.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    table = {i: _GAMMA_TABLES[i] for i in GAMMA_INDICES}
    if gammas is not None:
        table.update({i: np.asarray(m, dtype=complex) for i, m in gammas.items()})
    eye2 = 2.0 * np.eye(4, dtype=complex)
    rows = []
    for i, mu in enumerate(GAMMA_INDICES):
        for nu in GAMMA_INDICES[i:]:
            target = eye2 if mu == nu else 0.0
            dev = float(np.abs(anticommutator(table[mu], table[nu]) - target).max())
            rows.append((mu, nu, dev))
    passed = all(dev <= tolerance for _, _, dev in rows)
    return CliffordReport(rows=tuple(rows), tolerance=tolerance, passed=passed)
