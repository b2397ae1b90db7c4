"""Dirac-Coulomb ground states of hydrogen-like ions in position and momentum space.

Conventions (pinned by the energy cross-check in the test suite):

* position space  psi(r) = ( g(r) chi_m,  -i f(r) (sigma . r_hat) chi_m ) / sqrt(4 pi)
  with g = N r^(gamma-1) e^(-Z r) and f = -sqrt((1-gamma)/(1+gamma)) g;
* momentum space  psi(p) = ( g~(p) chi_m,  -f~(p) (sigma . p_hat) chi_m ) / sqrt(4 pi)
  with h~(p) = sqrt(2/pi) int_0^inf h(r) j_l(p r) r^2 dr, l = 0 for g and l = 1 for f.

With K = -beta (Sigma.L + 1) these states have kappa = -1 for both orientations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy.special import gammaln, spherical_jn

from relspin.dirac import PAULI, PhysicalConstants
from relspin.operators import h0_matrix
from relspin.quadrature import GridConfig, MomentumGrid, position_radial_rule

Orientation = Literal["up", "down"]

Z_MAX = 137


class SupercriticalError(ValueError):
    """alpha_el * Z >= 1: no point-nucleus ground state."""


class QuadratureError(RuntimeError):
    """A quadrature failed its convergence or normalization check."""


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    j: float
    m: float
    kappa: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        two_j, two_m = 2 * self.j, 2 * self.m
        if two_j != round(two_j) or round(two_j) % 2 != 1:
            raise ValueError(f"j must be a positive half-odd integer, got {self.j}")
        if not 0.5 <= self.j <= self.n - 0.5:
            raise ValueError(f"j must lie in 1/2 .. n - 1/2, got {self.j} for n = {self.n}")
        if two_m != round(two_m) or round(two_m) % 2 != 1 or abs(self.m) > self.j:
            raise ValueError(f"m must be a half-odd integer with |m| <= j, got {self.m}")
        if abs(self.kappa) != round(self.j + 0.5):
            raise ValueError(f"kappa must be +-(j + 1/2), got {self.kappa}")

    @classmethod
    def ground(cls, orientation: Orientation = "up") -> "QuantumNumbers":
        return cls(1, 0.5, 0.5 if orientation == "up" else -0.5, -1)


def check_charge(Z, consts: PhysicalConstants = PhysicalConstants()) -> int:
    if isinstance(Z, bool) or int(Z) != Z or not 1 <= Z <= Z_MAX:
        raise ValueError(f"Z must be an integer in 1..{Z_MAX}, got {Z!r}")
    if consts.alpha_el * Z >= 1:
        raise SupercriticalError(f"alpha_el * Z = {consts.alpha_el * Z:.6f} >= 1")
    return int(Z)


def ground_gamma(Z, consts: PhysicalConstants = PhysicalConstants()) -> float:
    az = consts.alpha_el * Z
    if az >= 1:
        raise SupercriticalError(f"alpha_el * Z = {az:.6f} >= 1")
    return math.sqrt(1.0 - az * az)


def sommerfeld_energy(q: QuantumNumbers, Z, consts: PhysicalConstants = PhysicalConstants()) -> float:
    """Bound-state energy E(n, j) in atomic units (rest energy included)."""
    az = consts.alpha_el * Z
    if az >= 1:
        raise SupercriticalError(f"alpha_el * Z = {az:.6f} >= 1")
    k = q.j + 0.5
    if az >= k:
        raise SupercriticalError(f"alpha_el * Z = {az:.6f} >= j + 1/2")
    denom = q.n - k + math.sqrt(k * k - az * az)
    return consts.m0c * consts.c / math.sqrt(1.0 + (az / denom) ** 2)


@dataclass(frozen=True)
class GroundStateSpec:
    Z: int
    gamma: float
    energy: float
    orientation: Orientation

    @property
    def quantum_numbers(self) -> QuantumNumbers:
        return QuantumNumbers.ground(self.orientation)


def ground_state_spec(Z, orientation: Orientation = "up", consts: PhysicalConstants = PhysicalConstants()) -> GroundStateSpec:
    if orientation not in ("up", "down"):
        raise ValueError(f"orientation must be 'up' or 'down', got {orientation!r}")
    Z = check_charge(Z, consts)
    gamma = ground_gamma(Z, consts)
    return GroundStateSpec(Z, gamma, consts.m0c * consts.c * gamma, orientation)


def _d_series(theta: np.ndarray, gamma: float) -> np.ndarray:
    # sin(g t)/g - sin((g+2) t)/(g+2), summed as a Taylor series (no cancellation)
    out = np.zeros_like(theta)
    t2 = theta * theta
    term_pow = theta.copy()
    fact = 1.0
    for k in range(1, 16):
        term_pow = term_pow * t2
        fact *= (2 * k) * (2 * k + 1)
        out += (-1) ** k * term_pow * (gamma ** (2 * k) - (gamma + 2) ** (2 * k)) / fact
    return out


def _d_function(theta: np.ndarray, gamma: float) -> np.ndarray:
    direct = np.sin(gamma * theta) / gamma - np.sin((gamma + 2) * theta) / (gamma + 2)
    small = theta < 0.5
    if np.any(small):
        direct = np.where(small, _d_series(np.where(small, theta, 0.0), gamma), direct)
    return direct


@dataclass(frozen=True)
class RadialFunctions:
    """Radial profiles of the ground state, normalized to int (g^2 + f^2) r^2 dr = 1."""

    Z: float
    gamma: float
    norm: float

    @property
    def lower_ratio(self) -> float:
        """f / g, constant in r."""
        return -math.sqrt((1.0 - self.gamma) / (1.0 + self.gamma))

    def g_position(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.norm * r ** (self.gamma - 1.0) * np.exp(-self.Z * r)

    def f_position(self, r) -> np.ndarray:
        return self.lower_ratio * self.g_position(r)

    def _prefactor(self) -> float:
        g = self.gamma
        return math.sqrt(2.0 / math.pi) * self.norm * math.exp(gammaln(g + 1.0)) / self.Z ** (g + 2.0)

    def _angle(self, p):
        # theta = atan(p / Z); sin and cos from the hypotenuse keep full relative precision near pi/2
        p = np.asarray(p, dtype=float)
        rho = np.hypot(self.Z, p)
        return np.arctan2(p, self.Z), p / rho, self.Z / rho

    def g_momentum(self, p) -> np.ndarray:
        """Closed-form l = 0 transform of g, in terms of theta = atan(p / Z)."""
        g = self.gamma
        theta, s, c = self._angle(p)
        safe = np.where(s == 0, 1.0, s)
        ratio = np.where(s == 0, g + 1.0, np.sin((g + 1.0) * theta) / safe)
        return self._prefactor() * ratio * c ** (g + 2.0)

    def f_momentum(self, p) -> np.ndarray:
        """Closed-form l = 1 transform of f."""
        g = self.gamma
        theta, s, c = self._angle(p)
        safe = np.where(s == 0, 1.0, s)
        val = 0.5 * (g + 2.0) * _d_function(theta, g) / safe**2
        val = np.where(s == 0, 0.0, val)
        return self.lower_ratio * self._prefactor() * val * c ** (g + 2.0)


def ground_radial_position(Z, consts: PhysicalConstants = PhysicalConstants()) -> RadialFunctions:
    Z = check_charge(Z, consts)
    g = ground_gamma(Z, consts)
    log_n2 = math.log1p(g) + (2 * g + 1) * math.log(2 * Z) - math.log(2.0) - gammaln(2 * g + 1)
    return RadialFunctions(float(Z), g, math.exp(0.5 * log_n2))


def position_integral(radial: RadialFunctions, func, power: float, order: int = 64) -> float:
    """int_0^inf (g^2 + f^2) func(r) r^2 dr, where func(r) r^2 ~ r^power near 0.

    The density's r^(2 gamma) e^(-2 Z r) factor is absorbed into a generalized
    Gauss-Laguerre weight together with r^(power - 2).
    """
    weight_power = 2 * radial.gamma - 2 + power
    r, w = position_radial_rule(2 * radial.Z, weight_power, order)
    density = radial.g_position(r) ** 2 + radial.f_position(r) ** 2
    reduced = density * func(r) * r ** (2.0 - weight_power) * np.exp(2 * radial.Z * r)
    return float(np.sum(w * reduced))


def position_norm(radial: RadialFunctions, order: int = 64) -> float:
    return position_integral(radial, np.ones_like, 2.0, order)


def inverse_radius_expectation(radial: RadialFunctions, order: int = 64) -> float:
    return position_integral(radial, lambda r: 1.0 / r, 1.0, order)


def bessel_transform(radial: RadialFunctions, ell: int, p, order: int = 128, tol: float = 1e-10) -> np.ndarray:
    """Numerical sqrt(2/pi) int_0^inf h(r) j_ell(p r) r^2 dr with h = g (ell = 0) or f (ell = 1).

    The r^(gamma+1) e^(-Z r) behaviour of h(r) r^2 is taken into the quadrature
    weight; only the Bessel factor is sampled.  Convergence is judged against a
    rule of three quarters the order, and ``QuadratureError`` is raised above ``tol``
    (relative to the largest value).  Usable for p up to a few Z.
    """
    if ell not in (0, 1):
        raise ValueError("ell must be 0 (upper component) or 1 (lower component)")
    h = radial.g_position if ell == 0 else radial.f_position
    p = np.asarray(p, dtype=float)
    g, Z = radial.gamma, radial.Z

    def run(n):
        r, w = position_radial_rule(Z, g + 1.0, n)
        # h(r) r^2 / (r^(g+1) e^(-Zr)), kept finite for large r
        reduced = h(r) * r ** (1.0 - g) * np.exp(Z * r)
        jl = spherical_jn(ell, np.multiply.outer(p, r))
        return math.sqrt(2.0 / math.pi) * (jl * (w * reduced)).sum(axis=-1)

    fine = run(order)
    coarse = run(max(3 * order // 4, 4))
    scale = max(float(np.max(np.abs(fine), initial=0.0)), np.finfo(float).tiny)
    err = float(np.max(np.abs(fine - coarse), initial=0.0)) / scale
    if err > tol:
        raise QuadratureError(f"Bessel transform not converged (relative change {err:.2e} > {tol:.1e})")
    return fine


@dataclass(frozen=True, eq=False)
class MomentumSpinorField:
    """4-spinor amplitudes on the nodes of a momentum grid (radial-major order)."""

    grid: MomentumGrid
    values: np.ndarray
    spec: GroundStateSpec | None = None
    radial: RadialFunctions | None = None

    def norm(self) -> float:
        return float(np.sum(self.grid.weights * np.sum(np.abs(self.values) ** 2, axis=-1)))

    def overlap(self, other: "MomentumSpinorField") -> complex:
        if not self.grid.same_as(other.grid):
            raise ValueError("fields live on different grids")
        return complex(self.grid.weights @ np.sum(self.values.conj() * other.values, axis=-1))

    def matrix_element(self, mats: np.ndarray, other: "MomentumSpinorField | None" = None) -> complex:
        """sum_n w_n psi_n^dag M_n phi_n for per-node matrices ``mats`` of shape (N, 4, 4)."""
        other = self if other is None else other
        if not self.grid.same_as(other.grid):
            raise ValueError("fields live on different grids")
        applied = np.matmul(mats, other.values[..., None])[..., 0]
        return complex(self.grid.weights @ np.sum(self.values.conj() * applied, axis=-1))


def two_spinor(orientation: Orientation) -> np.ndarray:
    return np.array([1.0, 0.0], dtype=complex) if orientation == "up" else np.array([0.0, 1.0], dtype=complex)


def assemble_momentum_spinor(
    spec: GroundStateSpec,
    grid: MomentumGrid,
    consts: PhysicalConstants = PhysicalConstants(),
    norm_tol: float = 1e-8,
) -> MomentumSpinorField:
    radial = ground_radial_position(spec.Z, consts)
    chi = two_spinor(spec.orientation)
    gt = radial.g_momentum(grid.radial_nodes)
    ft = radial.f_momentum(grid.radial_nodes)
    sigma_dir = np.einsum("nk,kab,b->na", grid.directions, PAULI, chi)

    values = np.empty((grid.radial_nodes.size, grid.directions.shape[0], 4), dtype=complex)
    values[..., :2] = gt[:, None, None] * chi
    values[..., 2:] = -ft[:, None, None] * sigma_dir[None, :, :]
    values = values.reshape(-1, 4) / math.sqrt(4.0 * math.pi)
    values.setflags(write=False)

    field = MomentumSpinorField(grid, values, spec, radial)
    err = abs(field.norm() - 1.0)
    if err > norm_tol:
        raise QuadratureError(f"momentum-space norm off by {err:.2e} (Z = {spec.Z}); raise the radial order")
    return field


@lru_cache(maxsize=32)
def ground_state_field(
    Z: int,
    orientation: Orientation = "up",
    consts: PhysicalConstants = PhysicalConstants(),
    grid: GridConfig = GridConfig(),
) -> MomentumSpinorField:
    spec = ground_state_spec(Z, orientation, consts)
    mgrid = MomentumGrid.for_ground_state(spec.Z, spec.gamma, grid.radial_order, grid.angular_order)
    return assemble_momentum_spinor(spec, mgrid, consts)


def free_energy_expectation(field: MomentumSpinorField, consts: PhysicalConstants = PhysicalConstants()) -> float:
    """<psi| H0 |psi> by momentum-space quadrature."""
    return field.matrix_element(h0_matrix(field.grid.points, consts)).real


def energy_cross_check(Z, consts: PhysicalConstants = PhysicalConstants(), grid: GridConfig = GridConfig()) -> dict:
    """Compare <H0> (momentum space) - Z <1/r> (position space) with the closed-form energy."""
    field = ground_state_field(Z, "up", consts, grid)
    radial = field.radial
    kinetic = free_energy_expectation(field, consts)
    potential = -Z * inverse_radius_expectation(radial)
    exact = sommerfeld_energy(QuantumNumbers.ground(), Z, consts)
    total = kinetic + potential
    return {
        "free": kinetic,
        "potential": potential,
        "total": total,
        "exact": exact,
        "relative_error": abs(total - exact) / abs(exact),
    }


__all__ = [
    "GroundStateSpec",
    "MomentumSpinorField",
    "QuadratureError",
    "QuantumNumbers",
    "RadialFunctions",
    "SupercriticalError",
    "assemble_momentum_spinor",
    "bessel_transform",
    "check_charge",
    "energy_cross_check",
    "ground_radial_position",
    "ground_state_field",
    "ground_state_spec",
    "sommerfeld_energy",
]
