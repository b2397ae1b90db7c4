"""Dirac matrices in the standard (Dirac-Pauli) representation and small 4x4 helpers.

All matrices are plain ``numpy`` arrays of shape ``(4, 4)`` and dtype ``complex128``.
Functions that take matrices also accept stacks with shape ``(..., 4, 4)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ALPHA_EL_CODATA = 1.0 / 137.035999084

HERMITIAN_TOL = 1e-10

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

# (i, j, k) cyclic, 1-based
_CYCLIC = {1: (2, 3), 2: (3, 1), 3: (1, 2)}


@dataclass(frozen=True)
class PhysicalConstants:
    """Rest mass, fine-structure constant and speed of light in atomic units."""

    m0: float = 1.0
    alpha_el: float = ALPHA_EL_CODATA
    c: float = field(init=False)

    def __post_init__(self):
        if not self.m0 > 0:
            raise ValueError(f"rest mass must be positive, got {self.m0}")
        if not 0 < self.alpha_el < 1:
            raise ValueError(f"alpha_el must lie in (0, 1), got {self.alpha_el}")
        object.__setattr__(self, "c", 1.0 / self.alpha_el)

    @property
    def m0c(self) -> float:
        return self.m0 * self.c


def _check_axis(i: int) -> int:
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or i not in (1, 2, 3):
        raise ValueError(f"axis index must be 1, 2 or 3, got {i!r}")
    return int(i)


def alpha_matrix(i: int) -> np.ndarray:
    """alpha_i with the Pauli block on the off-diagonal."""
    s = PAULI[_check_axis(i) - 1]
    out = np.zeros((4, 4), dtype=complex)
    out[:2, 2:] = s
    out[2:, :2] = s
    return out


def beta_matrix() -> np.ndarray:
    return np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)


def sigma_matrix(i: int) -> np.ndarray:
    """Sigma_i = -i alpha_j alpha_k for (i, j, k) a cyclic permutation of (1, 2, 3)."""
    j, k = _CYCLIC[_check_axis(i)]
    return -1j * alpha_matrix(j) @ alpha_matrix(k)


def alpha_vector() -> np.ndarray:
    """Stack (3, 4, 4) of alpha_1..alpha_3."""
    return np.stack([alpha_matrix(i) for i in (1, 2, 3)])


def sigma_vector() -> np.ndarray:
    return np.stack([sigma_matrix(i) for i in (1, 2, 3)])


def identity() -> np.ndarray:
    return np.eye(4, dtype=complex)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def max_entry(a: np.ndarray) -> np.ndarray:
    """Largest absolute entry over the trailing two axes."""
    return np.abs(a).max(axis=(-1, -2))


def hermitian_defect(a: np.ndarray) -> np.ndarray:
    return max_entry(a - dagger(a))


def eigenvalues_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Real spectrum of a Hermitian matrix (or stack), sorted ascending.

    Raises ``ValueError`` if the conjugate-transpose defect exceeds ``tol``.
    """
    a = np.asarray(a, dtype=complex)
    defect = np.max(hermitian_defect(a))
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    # symmetrize so roundoff in the input does not leak into eigh
    return np.linalg.eigvalsh(0.5 * (a + dagger(a)))


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[i, k, j] = -1.0
    return eps
