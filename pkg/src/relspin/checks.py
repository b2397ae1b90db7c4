"""Numerical checks of the defining properties of each spin operator:
commutation with the free Hamiltonian, the angular momentum algebra, the
spectrum {-1/2, +1/2} and rotation covariance.

Defects are maximum absolute matrix entries, scaled so they measure relative
rather than absolute violation:

* commutation with the free Hamiltonian uses ``H0 / (c p0)``, whose spectrum is
  exactly {-1, +1}; the raw commutator carries a factor ``c p0`` that can reach
  1e7 in the sampled range and would drown any tolerance in roundoff;
* each defect is divided by ``max(1, |S|)`` (``|S|^2`` for the algebra), where
  ``|S|`` is the largest entry of the operator components involved.

For the operators whose reference entries are "no" the witnesses sit at
``|p| ~ m0 c`` where ``|S| <= 1``, so the scaling leaves them untouched.

Rotation covariance uses the finite form of the vector-operator relation with
the total angular momentum: for a rotation ``R`` with spinor representation
``U = exp(-i angle/2 axis.Sigma)``,

    U^dagger S_i(R p) U = sum_j R_ij S_j(p).

Differentiating at angle 0 gives back the commutator form, so the two are
equivalent, and the finite form needs no derivative in momentum space.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from relspin import dirac
from relspin.dirac import PhysicalConstants
from relspin.operators import SpinKind, as_momentum, h0_matrix, p0_scalar, spin_vector

YES_TOL = 1e-10
NO_WITNESS = 1e-3

# reference matrix: (commutes with H0, angular momentum algebra, eigenvalues +-1/2)
EXPECTED_PROPERTIES = {
    SpinKind.PAULI: (False, True, True),
    SpinKind.FOLDY_WOUTHUYSEN: (True, True, True),
    SpinKind.CZACHOR: (True, False, False),
    SpinKind.FRENKEL: (True, False, False),
    SpinKind.CHAKRABARTI: (False, True, True),
    SpinKind.PRYCE: (True, True, True),
}

_SIGMA = dirac.sigma_vector()
_EPS = dirac.levi_civita()


@dataclass(frozen=True)
class RotationSpec:
    axis: tuple[float, float, float]
    angle: float

    def __post_init__(self):
        n = np.asarray(self.axis, dtype=float)
        if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise ValueError(f"rotation axis must be a unit 3-vector, got {self.axis!r}")

    @classmethod
    def from_vector(cls, axis, angle: float) -> "RotationSpec":
        n = np.asarray(axis, dtype=float)
        n = n / np.linalg.norm(n)
        return cls(tuple(float(x) for x in n), float(angle))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "RotationSpec":
        n = rng.normal(size=3)
        return cls.from_vector(n, rng.uniform(-np.pi, np.pi))

    def matrix(self) -> np.ndarray:
        """Active 3x3 rotation matrix (Rodrigues formula)."""
        n = np.asarray(self.axis)
        k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
        return np.eye(3) + np.sin(self.angle) * k + (1 - np.cos(self.angle)) * (k @ k)

    def spinor(self) -> np.ndarray:
        """exp(-i angle/2 axis.Sigma); closed form since (axis.Sigma)^2 = 1."""
        n_sigma = np.einsum("i,iab->ab", np.asarray(self.axis), _SIGMA)
        return np.cos(self.angle / 2) * dirac.identity() - 1j * np.sin(self.angle / 2) * n_sigma

    def compose(self, other: "RotationSpec") -> "RotationSpec":
        """Rotation equal to ``self`` applied after ``other``."""
        from scipy.spatial.transform import Rotation

        rotvec = Rotation.from_matrix(self.matrix() @ other.matrix()).as_rotvec()
        angle = float(np.linalg.norm(rotvec))
        if angle == 0.0:
            return RotationSpec((0.0, 0.0, 1.0), 0.0)
        # sign of U is fixed by the angle branch; S is invariant under U -> -U
        return RotationSpec.from_vector(rotvec, angle)


def _scale(s: np.ndarray) -> np.ndarray:
    return np.maximum(1.0, dirac.max_entry(s))


def h0_commutator_defect(kind: SpinKind, p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """max_i |[H0/(c p0), S_i]| / max(1, |S_i|); vectorized over momenta."""
    p = as_momentum(p)
    s = spin_vector(kind, p, consts)
    h = h0_matrix(p, consts) / (consts.c * p0_scalar(p, consts))[..., None, None]
    comm = dirac.commutator(h[..., None, :, :], s)
    return (dirac.max_entry(comm) / _scale(s)).max(axis=-1)


def algebra_defect(kind: SpinKind, p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """max_(i,j) |[S_i, S_j] - i eps_ijk S_k| / max(1, |S|^2)."""
    p = as_momentum(p)
    s = spin_vector(kind, p, consts)
    worst = np.zeros(p.shape[:-1])
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        d = dirac.commutator(s[..., i, :, :], s[..., j, :, :]) - 1j * s[..., k, :, :]
        worst = np.maximum(worst, dirac.max_entry(d))
    return worst / _scale(s).max(axis=-1) ** 2


def _eigenvalues(m: np.ndarray) -> np.ndarray:
    # Chakrabarti is not Hermitian, so fall back to the general solver where needed
    herm = dirac.hermitian_defect(m) <= dirac.HERMITIAN_TOL * np.maximum(1.0, dirac.max_entry(m))
    out = np.empty(m.shape[:-1], dtype=complex)
    if np.any(herm):
        out[herm] = np.linalg.eigvalsh(m[herm])
    if np.any(~herm):
        out[~herm] = np.linalg.eigvals(m[~herm])
    return out


def eigenvalue_deviation(kind: SpinKind, i: int, p, consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Largest distance of an eigenvalue of S_i from {-1/2, +1/2}, scaled by max(1, |S_i|)."""
    i = dirac._check_axis(i)
    p = as_momentum(p)
    m = spin_vector(kind, p, consts)[..., i - 1, :, :]
    ev = _eigenvalues(m)
    dist = np.minimum(np.abs(ev - 0.5), np.abs(ev + 0.5)).max(axis=-1)
    return dist / _scale(m)


def covariance_defect(
    kind: SpinKind, rotation: RotationSpec, p, consts: PhysicalConstants = PhysicalConstants()
) -> np.ndarray:
    """max_i |U^dag S_i(R p) U - R_ij S_j(p)| / max(1, |S|)."""
    p = as_momentum(p)
    r = rotation.matrix()
    u = rotation.spinor()
    rotated = spin_vector(kind, p @ r.T, consts)
    lhs = dirac.dagger(u) @ rotated @ u
    s = spin_vector(kind, p, consts)
    rhs = np.einsum("ij,...jab->...iab", r, s)
    return (dirac.max_entry(lhs - rhs) / np.maximum(_scale(s), _scale(rotated))).max(axis=-1)


def sample_momenta(n: int, seed: int, consts: PhysicalConstants = PhysicalConstants(), decades: float = 3.0) -> np.ndarray:
    """Log-uniform magnitudes in [10^-decades, 10^decades] m0 c along uniform random directions."""
    rng = np.random.default_rng(seed)
    mags = consts.m0c * 10.0 ** rng.uniform(-decades, decades, size=n)
    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return mags[:, None] * dirs


@dataclass(frozen=True)
class PropertyCheck:
    """One table cell: ``holds`` is True/False, or None if the defect falls between thresholds."""

    holds: bool | None
    max_defect: float
    witness: tuple[float, float, float] | None = None


@dataclass(frozen=True)
class PropertyReport:
    kind: SpinKind
    commutes_with_h0: PropertyCheck
    algebra_holds: PropertyCheck
    eigenvalues_half: PropertyCheck
    covariance_holds: PropertyCheck
    samples: int
    seed: int
    tolerance: float = YES_TOL
    witness_threshold: float = NO_WITNESS
    expected: tuple[bool, bool, bool] = field(default=(False, False, False))

    @property
    def row(self) -> tuple[bool | None, bool | None, bool | None]:
        return (self.commutes_with_h0.holds, self.algebra_holds.holds, self.eigenvalues_half.holds)

    @property
    def matches_table(self) -> bool:
        return self.row == self.expected


def _classify(defects: np.ndarray, momenta: np.ndarray, tol: float, witness: float) -> PropertyCheck:
    idx = int(np.argmax(defects))
    worst = float(defects[idx])
    if worst <= tol:
        return PropertyCheck(True, worst)
    w = tuple(float(x) for x in momenta[idx])
    return PropertyCheck(False if worst >= witness else None, worst, w)


def table1_report(
    samples: int = 1000,
    seed: int = 0,
    consts: PhysicalConstants = PhysicalConstants(),
    tol: float = YES_TOL,
    witness: float = NO_WITNESS,
    rotations: int = 100,
) -> list[PropertyReport]:
    """Evaluate every property for every operator over sampled momenta."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    p = sample_momenta(samples, seed, consts)
    rng = np.random.default_rng([seed, 1])
    rots = [RotationSpec.random(rng) for _ in range(rotations)]
    reports = []
    for kind in SpinKind:
        h0 = h0_commutator_defect(kind, p, consts)
        alg = algebra_defect(kind, p, consts)
        eig = np.max([eigenvalue_deviation(kind, i, p, consts) for i in (1, 2, 3)], axis=0)
        cov = np.zeros(samples)
        for n, rot in enumerate(rots):
            # each rotation is paired with a strided subset of the momenta
            sub = slice(n % samples, None, max(1, rotations))
            cov[sub] = np.maximum(cov[sub], covariance_defect(kind, rot, p[sub], consts))
        reports.append(
            PropertyReport(
                kind=kind,
                commutes_with_h0=_classify(h0, p, tol, witness),
                algebra_holds=_classify(alg, p, tol, witness),
                eigenvalues_half=_classify(eig, p, tol, witness),
                covariance_holds=_classify(cov, p, tol, witness),
                samples=samples,
                seed=seed,
                tolerance=tol,
                witness_threshold=witness,
                expected=EXPECTED_PROPERTIES[kind],
            )
        )
    return reports
