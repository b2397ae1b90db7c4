"""Spin expectation values on hydrogenic ground states.

In momentum space every spin operator is a multiplication operator, so matrix
elements reduce to weighted sums of ``psi^dag S(p) phi`` over the grid nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from relspin.dirac import PhysicalConstants
from relspin.hydrogen import MomentumSpinorField, check_charge, ground_state_field
from relspin.operators import SpinKind, spin_matrix
from relspin.quadrature import GridConfig

IMAG_TOL = 1e-10


@dataclass(frozen=True)
class SuperpositionParams:
    """cos(eta/2) psi_up + sin(eta/2) e^(i zeta) psi_down, reduced to eta in [0, pi], zeta in [0, 2 pi)."""

    eta: float
    zeta: float = 0.0

    def __post_init__(self):
        eta = math.remainder(self.eta, 2 * math.pi)
        zeta = self.zeta
        # (eta, zeta) and (-eta, zeta + pi) describe the same state
        if eta < 0:
            eta, zeta = -eta, zeta + math.pi
        zeta = zeta % (2 * math.pi)
        if zeta >= 2 * math.pi:  # -tiny % 2pi rounds up to 2pi
            zeta = 0.0
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "zeta", zeta)

    @property
    def up_amplitude(self) -> complex:
        return complex(math.cos(self.eta / 2))

    @property
    def down_amplitude(self) -> complex:
        return math.sin(self.eta / 2) * complex(math.cos(self.zeta), math.sin(self.zeta))


@dataclass(frozen=True)
class ExpectationResult:
    kind: SpinKind
    Z: int
    axis: int
    value: float
    variance: float
    quadrature_error_estimate: float = float("nan")
    imaginary_part: float = 0.0


def _operator_on_grid(kind: SpinKind, axis: int, field: MomentumSpinorField, consts: PhysicalConstants) -> np.ndarray:
    return spin_matrix(kind, axis, field.grid.points, consts)


def _raw_expectation(kind, field, axis, consts):
    # <S> and <S^2>, the latter as (S^dag psi)^dag (S psi) to avoid forming S @ S
    s = _operator_on_grid(kind, axis, field, consts)
    psi = field.values
    s_psi = np.matmul(s, psi[..., None])[..., 0]
    sdag_psi = np.matmul(np.conj(np.swapaxes(s, -1, -2)), psi[..., None])[..., 0]
    w = field.grid.weights
    value = complex(w @ np.sum(psi.conj() * s_psi, axis=-1))
    second = complex(w @ np.sum(sdag_psi.conj() * s_psi, axis=-1))
    return value, second


def spin_expectation(
    kind: SpinKind,
    state: MomentumSpinorField,
    axis: int = 3,
    consts: PhysicalConstants = PhysicalConstants(),
    reference: MomentumSpinorField | None = None,
) -> ExpectationResult:
    """<psi| S_axis |psi> and its variance.

    ``reference`` is the same state on a finer grid; when given, the absolute
    difference of the two values is reported as the quadrature error estimate.
    """
    kind = SpinKind(kind)
    value, second = _raw_expectation(kind, state, axis, consts)
    variance = second.real - value.real**2
    if variance < 0:
        variance = 0.0
    err = float("nan")
    if reference is not None:
        ref_value, _ = _raw_expectation(kind, reference, axis, consts)
        err = abs(ref_value.real - value.real)
    z = state.spec.Z if state.spec is not None else -1
    return ExpectationResult(kind, z, axis, value.real, variance, err, value.imag)


def mixing_term(
    kind: SpinKind,
    up: MomentumSpinorField,
    down: MomentumSpinorField,
    axis: int = 3,
    consts: PhysicalConstants = PhysicalConstants(),
) -> complex:
    """<psi_up| S_axis |psi_down>."""
    if not up.grid.same_as(down.grid):
        raise ValueError("up and down states must share one grid")
    return up.matrix_element(_operator_on_grid(kind, axis, up, consts), down)


def superposition_expectation(
    kind: SpinKind,
    params: SuperpositionParams,
    up: MomentumSpinorField,
    down: MomentumSpinorField,
    axis: int = 3,
    consts: PhysicalConstants = PhysicalConstants(),
) -> float:
    """Expectation value in the superposition, assembled from the three matrix elements."""
    s = _operator_on_grid(kind, axis, up, consts)
    uu = up.matrix_element(s).real
    dd = down.matrix_element(s).real
    mix = mixing_term(kind, up, down, axis, consts).real
    h = params.eta / 2
    return (
        math.cos(h) ** 2 * uu
        + math.sin(h) ** 2 * dd
        + 2 * math.cos(h) * math.sin(h) * math.cos(params.zeta) * mix
    )


def superposed_field(params: SuperpositionParams, up: MomentumSpinorField, down: MomentumSpinorField) -> MomentumSpinorField:
    if not up.grid.same_as(down.grid):
        raise ValueError("up and down states must share one grid")
    values = params.up_amplitude * up.values + params.down_amplitude * down.values
    return MomentumSpinorField(up.grid, values, None, up.radial)


def direct_superposition_expectation(
    kind: SpinKind,
    params: SuperpositionParams,
    up: MomentumSpinorField,
    down: MomentumSpinorField,
    axis: int = 3,
    consts: PhysicalConstants = PhysicalConstants(),
) -> complex:
    """Same quantity by quadrature over the superposed spinor field itself."""
    psi = superposed_field(params, up, down)
    return psi.matrix_element(_operator_on_grid(kind, axis, psi, consts))


@dataclass(frozen=True)
class BoundsReport:
    kind: SpinKind
    Z: int
    lower: float
    upper: float
    tolerance: float
    holds: bool
    smallest: float
    largest: float
    argmin: SuperpositionParams
    argmax: SuperpositionParams


def bounds_check(
    kind: SpinKind,
    Z: int,
    samples: Iterable[SuperpositionParams],
    consts: PhysicalConstants = PhysicalConstants(),
    grid: GridConfig = GridConfig(),
    tol: float = 1e-8,
    axis: int = 3,
) -> BoundsReport:
    """Check <down|S|down> <= <psi|S|psi> <= <up|S|up> for every sampled superposition."""
    Z = check_charge(Z, consts)
    up = ground_state_field(Z, "up", consts, grid)
    down = ground_state_field(Z, "down", consts, grid)
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one superposition sample")
    values = [superposition_expectation(kind, s, up, down, axis, consts) for s in samples]
    s = _operator_on_grid(kind, axis, up, consts)
    lower = down.matrix_element(s).real
    upper = up.matrix_element(s).real
    lo, hi = int(np.argmin(values)), int(np.argmax(values))
    holds = all(lower - tol <= v <= upper + tol for v in values)
    return BoundsReport(SpinKind(kind), Z, lower, upper, tol, holds, values[lo], values[hi], samples[lo], samples[hi])


def random_superpositions(n: int, seed: int) -> list[SuperpositionParams]:
    rng = np.random.default_rng(seed)
    return [SuperpositionParams(float(e), float(z)) for e, z in zip(rng.uniform(0, np.pi, n), rng.uniform(0, 2 * np.pi, n))]


def z_scan(
    kinds: Sequence[SpinKind],
    z_values: Sequence[int],
    axis: int = 3,
    grid: GridConfig = GridConfig(),
    consts: PhysicalConstants = PhysicalConstants(),
    error_estimate: bool = True,
) -> list[ExpectationResult]:
    """One result per (kind, Z): kinds in enumeration order, then Z ascending.

    The error estimate compares against the same state with both quadrature
    orders doubled.
    """
    kinds = [SpinKind(k) for k in kinds]
    if not kinds:
        raise ValueError("no spin operators selected")
    zs = sorted({check_charge(z, consts) for z in z_values})
    if not zs:
        raise ValueError("no atomic numbers selected")
    order = [k for k in SpinKind if k in kinds]
    rows: dict[tuple[SpinKind, int], ExpectationResult] = {}
    for z in zs:
        state = ground_state_field(z, "up", consts, grid)
        fine = ground_state_field(z, "up", consts, grid.doubled()) if error_estimate else None
        for kind in order:
            rows[kind, z] = spin_expectation(kind, state, axis, consts, reference=fine)
    return [rows[k, z] for k in order for z in zs]
