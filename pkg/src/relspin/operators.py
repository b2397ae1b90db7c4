"""Candidate relativistic spin operators as momentum-space 4x4 matrices.

Every builder accepts a momentum of shape ``(3,)`` or a stack ``(..., 3)`` and
returns matrices of shape ``(..., 4, 4)`` (or ``(..., 3, 4, 4)`` for the full
vector operator).  Axis indices in the public API are 1-based.
"""
from __future__ import annotations

import enum

import numpy as np

from relspin import dirac
from relspin.dirac import PhysicalConstants

_ALPHA = dirac.alpha_vector()
_BETA = dirac.beta_matrix()
_SIGMA = dirac.sigma_vector()
_EYE = dirac.identity()
_EPS = dirac.levi_civita()
# alpha_3 alpha_2 alpha_1, in the order it appears in the Pryce operator
_A321 = _ALPHA[2] @ _ALPHA[1] @ _ALPHA[0]


class SingularMomentumError(ValueError):
    """Raised when an operator is evaluated where it is undefined (Pryce at p = 0)."""


class SpinKind(enum.Enum):
    PAULI = "Pauli"
    FOLDY_WOUTHUYSEN = "FoldyWouthuysen"
    CZACHOR = "Czachor"
    FRENKEL = "Frenkel"
    CHAKRABARTI = "Chakrabarti"
    PRYCE = "Pryce"

    @classmethod
    def parse(cls, name: str) -> "SpinKind":
        key = name.strip().lower().replace("-", "").replace("_", "")
        for kind in cls:
            if key in (kind.value.lower(), kind.name.lower().replace("_", "")):
                return kind
        if key == "fw":
            return cls.FOLDY_WOUTHUYSEN
        raise ValueError(f"unknown spin operator {name!r}")


def as_momentum(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (3,):
        raise ValueError(f"momentum must have a trailing axis of length 3, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("momentum components must be finite")
    return p


def p0_scalar(p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """(m0^2 c^2 + |p|^2)^(1/2)."""
    p = as_momentum(p)
    return np.sqrt(consts.m0c**2 + np.einsum("...i,...i->...", p, p))


# flattened (3, 16) copies so the p-contractions below are plain matmuls
_ALPHA16 = _ALPHA.reshape(3, 16)
_SIGMA16 = _SIGMA.reshape(3, 16)
_BETA_ALPHA16 = (_BETA @ _ALPHA).reshape(3, 16)


def _dot(p: np.ndarray, mats16: np.ndarray) -> np.ndarray:
    # p . M, shape (..., 16)
    return p @ mats16


def _cross_matrix(p: np.ndarray) -> np.ndarray:
    # C_ik = eps_ijk p_j, so that (p x M)_i = C_ik M_k
    c = np.zeros(p.shape[:-1] + (3, 3))
    c[..., 0, 1], c[..., 0, 2] = -p[..., 2], p[..., 1]
    c[..., 1, 0], c[..., 1, 2] = p[..., 2], -p[..., 0]
    c[..., 2, 0], c[..., 2, 1] = -p[..., 1], p[..., 0]
    return c


def _unflatten(x: np.ndarray) -> np.ndarray:
    return x.reshape(x.shape[:-1] + (4, 4))


def h0_matrix(p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Free Dirac Hamiltonian c alpha.p + m0 c^2 beta."""
    p = as_momentum(p)
    return consts.c * _unflatten(_dot(p, _ALPHA16)) + consts.m0c * consts.c * _BETA


def spin_vector(kind: SpinKind, p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """All three components of the spin operator ``kind`` at momentum ``p``.

    Returns an array of shape ``(..., 3, 4, 4)``.
    """
    return _components(SpinKind(kind), as_momentum(p), consts, [0, 1, 2])


def _components(kind: SpinKind, p: np.ndarray, consts: PhysicalConstants, rows: list[int]) -> np.ndarray:
    # the selected Cartesian components only, shape (..., len(rows), 4, 4)
    mc = consts.m0c
    p2 = np.sum(p * p, axis=-1)
    p0 = np.sqrt(mc**2 + p2)
    # scalars broadcast against (..., rows, 16)
    p2_, p0_ = p2[..., None, None], p0[..., None, None]
    shape = p.shape[:-1] + (len(rows), 16)
    sigma16 = _SIGMA16[rows]
    p_rows = p[..., rows]

    if kind is SpinKind.PAULI:
        return _unflatten(np.broadcast_to(0.5 * sigma16, shape).copy())

    if kind is SpinKind.PRYCE:
        if np.any(p2 == 0):
            raise SingularMomentumError("the Pryce operator is undefined at p = 0")
        front = (_A321 @ (_BETA + _EYE)).reshape(16)
        # i a3 a2 a1 (beta + 1) (alpha . p), then times p_i / (2 p^2)
        scalar_part = _unflatten(_dot(p, _ALPHA16))
        scalar_part = (front.reshape(4, 4) @ scalar_part).reshape(p.shape[:-1] + (1, 16))
        out = 0.5 * (_BETA @ _SIGMA).reshape(3, 16)[rows] + 1j * scalar_part * (p_rows[..., :, None] / (2 * p2_))
        return _unflatten(out)

    cross = _cross_matrix(p)[..., rows, :]
    beta_p_cross_alpha = cross @ _BETA_ALPHA16
    if kind is SpinKind.FRENKEL:
        return _unflatten(0.5 * sigma16 + 1j * beta_p_cross_alpha / (2 * mc))

    # p x (Sigma x p) = |p|^2 Sigma - p (p . Sigma)
    p_sigma = _dot(p, _SIGMA16)[..., None, :]
    p_p_sigma = p_rows[..., :, None] * p_sigma
    p_cross_sigma_cross_p = p2_ * sigma16 - p_p_sigma

    if kind is SpinKind.FOLDY_WOUTHUYSEN:
        out = (
            0.5 * sigma16
            + 1j * beta_p_cross_alpha / (2 * p0_)
            - p_cross_sigma_cross_p / (2 * p0_ * (p0_ + mc))
        )
    elif kind is SpinKind.CZACHOR:
        out = (
            mc**2 / (2 * p0_**2) * sigma16
            + 1j * mc * beta_p_cross_alpha / (2 * p0_**2)
            + p_p_sigma / (2 * p0_**2)
        )
    elif kind is SpinKind.CHAKRABARTI:
        # alpha x p = -(p x alpha)
        alpha_cross_p = -(cross @ _ALPHA16)
        out = (
            0.5 * sigma16
            + 1j * alpha_cross_p / (2 * mc)
            + p_cross_sigma_cross_p / (2 * mc * (mc + p0_))
        )
    else:
        raise AssertionError(kind)
    return _unflatten(out)


def spin_matrix(kind: SpinKind, i: int, p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Component ``i`` (1-based) of the spin operator ``kind`` at momentum ``p``."""
    i = dirac._check_axis(i)
    return _components(SpinKind(kind), as_momentum(p), consts, [i - 1])[..., 0, :, :]


def spin_squared_matrix(kind: SpinKind, i: int, p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    m = spin_matrix(kind, i, p, consts)
    return m @ m
