"""Bundled invariant checks, grouped the way ``relspin verify`` reports them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from relspin import dirac
from relspin.checks import table1_report
from relspin.dirac import PhysicalConstants
from relspin.expectation import (
    direct_superposition_expectation,
    mixing_term,
    random_superpositions,
    spin_expectation,
    superposition_expectation,
)
from relspin.hydrogen import (
    QuadratureError,
    QuantumNumbers,
    energy_cross_check,
    ground_gamma,
    ground_radial_position,
    ground_state_field,
    position_norm,
    sommerfeld_energy,
)
from relspin.operators import SpinKind
from relspin.quadrature import GridConfig

ALGEBRA_TOL = 1e-14
PARSEVAL_Z = (1, 20, 60, 92, 120, 137)
CROSS_CHECK_Z = (1, 60, 120)
CONVERGENCE_Z = (1, 92, 137)


@dataclass(frozen=True)
class GroupResult:
    name: str
    passed: bool
    detail: str


def check_dirac_algebra() -> GroupResult:
    alphas = [dirac.alpha_matrix(i) for i in (1, 2, 3)]
    beta = dirac.beta_matrix()
    sigmas = [dirac.sigma_matrix(i) for i in (1, 2, 3)]
    eye = dirac.identity()
    worst = float(dirac.max_entry(beta @ beta - eye))
    for (i, a), (k, b) in itertools.product(enumerate(alphas), repeat=2):
        worst = max(worst, float(dirac.max_entry(dirac.anticommutator(a, b) - 2 * (i == k) * eye)))
    for a in alphas:
        worst = max(worst, float(dirac.max_entry(dirac.anticommutator(a, beta))))
    for s in sigmas:
        worst = max(
            worst,
            float(dirac.hermitian_defect(s)),
            abs(np.trace(s)),
            float(dirac.max_entry(s @ s - eye)),
            float(dirac.max_entry(dirac.commutator(beta, s))),
        )
    return GroupResult("dirac_algebra", worst <= ALGEBRA_TOL, f"max identity defect {worst:.2e} (tol {ALGEBRA_TOL:.0e})")


def check_table1(samples: int, seed: int, consts: PhysicalConstants, tol: float = 1e-10) -> GroupResult:
    reports = table1_report(samples, seed, consts, tol=tol)
    matched = sum(int(a == b) for r in reports for a, b in zip(r.row, r.expected))
    covariant = all(r.covariance_holds.holds for r in reports)
    ok = matched == 18 and covariant
    return GroupResult("table1", ok, f"{matched}/18 cells match, rotation covariance {'holds' if covariant else 'FAILS'}")


def check_hydrogen(consts: PhysicalConstants, grid: GridConfig) -> GroupResult:
    problems = []
    energy_err = max(
        abs(sommerfeld_energy(QuantumNumbers.ground(), z, consts) - consts.m0c * consts.c * ground_gamma(z, consts))
        / (consts.m0c * consts.c)
        for z in range(1, 138)
        if consts.alpha_el * z < 1
    )
    if energy_err > 1e-12:
        problems.append(f"closed-form energy off by {energy_err:.1e}")
    parseval = 0.0
    cross = 0.0
    try:
        for z in PARSEVAL_Z:
            radial = ground_radial_position(z, consts)
            field = ground_state_field(z, "up", consts, grid)
            parseval = max(parseval, abs(field.norm() - position_norm(radial)))
        for z in CROSS_CHECK_Z:
            cross = max(cross, energy_cross_check(z, consts, grid)["relative_error"])
    except QuadratureError as exc:
        return GroupResult("hydrogen", False, f"quadrature failure: {exc}")
    if parseval > 1e-8:
        problems.append(f"Parseval mismatch {parseval:.1e}")
    if cross > 1e-6:
        problems.append(f"energy cross-check relative error {cross:.1e}")
    detail = "; ".join(problems) or (
        f"energy {energy_err:.1e}, Parseval {parseval:.1e}, energy cross-check {cross:.1e}"
    )
    return GroupResult("hydrogen", not problems, detail)


def check_expectation(consts: PhysicalConstants, grid: GridConfig, seed: int) -> GroupResult:
    problems = []
    worst = {"pryce": 0.0, "variance": 0.0, "antisym": 0.0, "mixing": 0.0, "superposition": 0.0, "imag": 0.0}
    params = random_superpositions(10, seed)
    try:
        for z in (1, 92, 137):
            up = ground_state_field(z, "up", consts, grid)
            down = ground_state_field(z, "down", consts, grid)
            for kind in SpinKind:
                ru = spin_expectation(kind, up, 3, consts)
                rd = spin_expectation(kind, down, 3, consts)
                worst["antisym"] = max(worst["antisym"], abs(ru.value + rd.value))
                worst["imag"] = max(worst["imag"], abs(ru.imaginary_part), abs(rd.imaginary_part))
                worst["mixing"] = max(worst["mixing"], abs(mixing_term(kind, up, down, 3, consts).real))
                if kind is SpinKind.PRYCE:
                    worst["pryce"] = max(worst["pryce"], abs(ru.value - 0.5))
                    worst["variance"] = max(worst["variance"], ru.variance)
                for prm in params:
                    a = superposition_expectation(kind, prm, up, down, 3, consts)
                    b = direct_superposition_expectation(kind, prm, up, down, 3, consts).real
                    worst["superposition"] = max(worst["superposition"], abs(a - b))
    except QuadratureError as exc:
        return GroupResult("expectation", False, f"quadrature failure: {exc}")
    limits = {"pryce": 1e-8, "variance": 1e-8, "antisym": 1e-8, "mixing": 1e-8, "superposition": 1e-10, "imag": 1e-10}
    for key, lim in limits.items():
        if worst[key] > lim:
            problems.append(f"{key} {worst[key]:.1e} > {lim:.0e}")
    detail = "; ".join(problems) or ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    return GroupResult("expectation", not problems, detail)


def check_convergence(consts: PhysicalConstants, grid: GridConfig, tol: float = 1e-6) -> GroupResult:
    """Doubling both orders must leave <S_3> and the transverse <up|S_1|down> unchanged."""
    worst, where = 0.0, ""
    fine_grid = grid.doubled()
    try:
        for z in CONVERGENCE_Z:
            coarse_up = ground_state_field(z, "up", consts, grid)
            coarse_dn = ground_state_field(z, "down", consts, grid)
            fine_up = ground_state_field(z, "up", consts, fine_grid)
            fine_dn = ground_state_field(z, "down", consts, fine_grid)
            for kind in SpinKind:
                d3 = abs(spin_expectation(kind, coarse_up, 3, consts).value - spin_expectation(kind, fine_up, 3, consts).value)
                d1 = abs(mixing_term(kind, coarse_up, coarse_dn, 1, consts) - mixing_term(kind, fine_up, fine_dn, 1, consts))
                for d, label in ((d3, "<S3>"), (d1, "<up|S1|down>")):
                    if d > worst:
                        worst, where = d, f"{kind.value} {label} at Z={z}"
    except QuadratureError as exc:
        return GroupResult("convergence", False, f"quadrature failure: {exc}")
    ok = worst < tol
    return GroupResult("convergence", ok, f"largest change under order doubling {worst:.1e} ({where}; tol {tol:.0e})")


def run_all(
    consts: PhysicalConstants = PhysicalConstants(),
    grid: GridConfig = GridConfig(),
    seed: int = 0,
    samples: int = 1000,
) -> list[GroupResult]:
    return [
        check_dirac_algebra(),
        check_table1(samples, seed, consts),
        check_hydrogen(consts, grid),
        check_expectation(consts, grid, seed),
        check_convergence(consts, grid),
    ]
