"""Command-line front end: ``relspin {table1,scan,verify,energy,state}``.

Every output starts with ``#`` header lines recording the package version,
alpha_el, quadrature orders, seed and a canonical form of the command.  The
canonical command lists every option with its effective value and omits
``--out``, so identical configurations give byte-identical files wherever
they are written.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction

from relspin import __version__
from relspin.checks import NO_WITNESS, YES_TOL, table1_report
from relspin.dirac import ALPHA_EL_CODATA, PhysicalConstants
from relspin.expectation import z_scan
from relspin.hydrogen import (
    QuadratureError,
    QuantumNumbers,
    Z_MAX,
    check_charge,
    ground_state_field,
    ground_state_spec,
    position_norm,
    sommerfeld_energy,
)
from relspin.operators import SpinKind
from relspin.quadrature import GridConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MIN_RADIAL_ORDER = 4
MIN_ANGULAR_ORDER = 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha_el: float = ALPHA_EL_CODATA
    radial_order: int = 64
    angular_order: int = 8
    seed: int = 0
    out: str = "-"
    format: str = "csv"

    def __post_init__(self):
        if self.radial_order < MIN_RADIAL_ORDER:
            raise UsageError(f"--radial-order must be >= {MIN_RADIAL_ORDER}")
        if self.angular_order < MIN_ANGULAR_ORDER:
            raise UsageError(f"--angular-order must be >= {MIN_ANGULAR_ORDER}")
        if self.format not in ("csv", "text"):
            raise UsageError("--format must be csv or text")
        if not (0 < self.alpha_el < 1):
            raise UsageError("--alpha-el must lie in (0, 1)")

    @property
    def consts(self) -> PhysicalConstants:
        return PhysicalConstants(alpha_el=self.alpha_el)

    @property
    def grid(self) -> GridConfig:
        return GridConfig(self.radial_order, self.angular_order)

    def header(self, command: str) -> str:
        lines = [
            f"relspin {__version__}",
            f"alpha_el={self.alpha_el!r} radial_order={self.radial_order} "
            f"angular_order={self.angular_order} seed={self.seed}",
            f"command: relspin {command}",
        ]
        return "".join(f"# {line}\n" for line in lines)


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _table_text(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _render(cfg: RunConfig, header: list[str], rows: list[list]) -> str:
    return _csv_text(header, rows) if cfg.format == "csv" else _table_text(header, rows)


def _emit(cfg: RunConfig, command: str, body: str) -> None:
    text = cfg.header(command) + body
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _common_flags(cfg: RunConfig) -> str:
    return (
        f"--alpha-el {cfg.alpha_el!r} --radial-order {cfg.radial_order} "
        f"--angular-order {cfg.angular_order} --seed {cfg.seed} --format {cfg.format}"
    )


def _yes_no(v) -> str:
    return {True: "yes", False: "no", None: "undecided"}[v]


def cmd_table1(cfg: RunConfig, samples: int, tolerance: float, witness: float) -> int:
    if samples < 1:
        raise UsageError("--samples must be positive")
    if tolerance <= 0 or witness <= 0:
        raise UsageError("--tolerance and --witness must be positive")
    reports = table1_report(samples, cfg.seed, cfg.consts, tol=tolerance, witness=witness)
    header = [
        "kind", "commutes_h0", "h0_defect", "spin_algebra", "algebra_defect",
        "eigen_half", "eigen_defect", "rot_covariant", "covariance_defect", "expected", "match",
    ]
    rows = []
    for r in reports:
        checks = (r.commutes_with_h0, r.algebra_holds, r.eigenvalues_half, r.covariance_holds)
        row = [r.kind.value]
        for c in checks:
            row += [_yes_no(c.holds), fmt(c.max_defect)]
        row += ["/".join(_yes_no(e) for e in r.expected), "ok" if r.matches_table else "MISMATCH"]
        rows.append(row)
    matched = sum(int(a == b) for r in reports for a, b in zip(r.row, r.expected))
    covariant = all(r.covariance_holds.holds for r in reports)
    command = (
        f"table1 --samples {samples} --tolerance {tolerance!r} --witness {witness!r} {_common_flags(cfg)}"
    )
    _emit(cfg, command, _render(cfg, header, rows) + f"# {matched}/18 cells match\n")
    if matched != 18 or not covariant:
        bad = [r.kind.value for r in reports if not r.matches_table]
        print(f"table1: {matched}/18 cells match; mismatching rows: {', '.join(bad) or 'none'}"
              f"{'' if covariant else '; rotation covariance fails'}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _parse_kinds(text: str) -> list[SpinKind]:
    names = [t for t in (s.strip() for s in text.split(",")) if t]
    if not names:
        raise UsageError("--kinds selects no spin operators")
    try:
        kinds = {SpinKind.parse(n) for n in names}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return [k for k in SpinKind if k in kinds]


def cmd_scan(cfg: RunConfig, kinds_text: str, z_min: int, z_max: int, axis: int, error_estimate: bool) -> int:
    kinds = _parse_kinds(kinds_text)
    if not (1 <= z_min <= z_max <= Z_MAX):
        raise UsageError(f"need 1 <= --z-min <= --z-max <= {Z_MAX}, got {z_min}..{z_max}")
    if axis not in (1, 2, 3):
        raise UsageError("--axis must be 1, 2 or 3")
    try:
        zs = [check_charge(z, cfg.consts) for z in range(z_min, z_max + 1)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    results = z_scan(kinds, zs, axis, cfg.grid, cfg.consts, error_estimate=error_estimate)
    rows = [[r.kind.value, r.Z, r.axis, fmt(r.value), fmt(r.variance), fmt(r.quadrature_error_estimate)] for r in results]
    command = (
        f"scan --kinds {','.join(k.value for k in kinds)} --z-min {z_min} --z-max {z_max} --axis {axis}"
        f"{'' if error_estimate else ' --no-error-estimate'} {_common_flags(cfg)}"
    )
    _emit(cfg, command, _render(cfg, ["kind", "Z", "axis", "value", "variance", "error_estimate"], rows))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, samples: int) -> int:
    from relspin.verify import run_all

    if cfg.angular_order < 4:
        print(f"warning: angular order {cfg.angular_order} is below 4 and under-resolves transverse elements",
              file=sys.stderr)
    results = run_all(cfg.consts, cfg.grid, cfg.seed, samples)
    rows = [[g.name, "PASS" if g.passed else "FAIL", g.detail] for g in results]
    _emit(cfg, f"verify --samples {samples} {_common_flags(cfg)}", _render(cfg, ["group", "status", "detail"], rows))
    return EXIT_OK if all(g.passed for g in results) else EXIT_FAIL


def _parse_j(text: str) -> float:
    try:
        j = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse j = {text!r}") from None
    return float(j)


def cmd_energy(cfg: RunConfig, n: int, j_text: str, Z: int) -> int:
    j = _parse_j(j_text)
    if Z < 1:
        raise UsageError(f"--z must be a positive integer, got {Z}")
    try:
        q = QuantumNumbers(n, j, 0.5, -int(round(j + 0.5)))
        energy = sommerfeld_energy(q, Z, cfg.consts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rest = cfg.consts.m0c * cfg.consts.c
    header = ["n", "j", "Z", "energy_m0c2", "energy_hartree"]
    rows = [[n, str(Fraction(j)), Z, fmt(energy / rest), fmt(energy)]]
    command = f"energy --n {n} --j {Fraction(j)} --z {Z} {_common_flags(cfg)}"
    _emit(cfg, command, _render(cfg, header, rows))
    return EXIT_OK


def cmd_state(cfg: RunConfig, Z: int, orientation: str) -> int:
    try:
        spec = ground_state_spec(Z, orientation, cfg.consts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    field = ground_state_field(spec.Z, orientation, cfg.consts, cfg.grid)
    radial = field.radial
    grid = field.grid
    g = radial.g_momentum(grid.radial_nodes)
    f = radial.f_momentum(grid.radial_nodes)
    meta = [
        f"Z={spec.Z} orientation={orientation}",
        f"gamma={fmt(spec.gamma)} energy_m0c2={fmt(spec.energy / (cfg.consts.m0c * cfg.consts.c))}",
        f"norm_momentum={fmt(field.norm())} norm_position={fmt(position_norm(radial))}",
        "weight includes p^2 dp; norm = sum weight * (g~^2 + f~^2)",
    ]
    rows = [[i, fmt(p), fmt(w), fmt(gv), fmt(fv)] for i, (p, w, gv, fv) in enumerate(zip(grid.radial_nodes, grid.radial_weights, g, f))]
    body = "".join(f"# {m}\n" for m in meta) + _render(cfg, ["node", "p", "weight", "g_momentum", "f_momentum"], rows)
    _emit(cfg, f"state --z {spec.Z} --orientation {orientation} {_common_flags(cfg)}", body)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha-el", type=float, default=ALPHA_EL_CODATA, help="fine-structure constant")
    common.add_argument("--radial-order", type=int, default=64)
    common.add_argument("--angular-order", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="-", help="output file ('-' for stdout)")

    parser = argparse.ArgumentParser(prog="relspin", description="Relativistic spin operators on hydrogenic states.")
    parser.add_argument("--version", action="version", version=f"relspin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="operator property matrix")
    p.add_argument("--format", choices=("csv", "text"), default="text")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--tolerance", type=float, default=YES_TOL)
    p.add_argument("--witness", type=float, default=NO_WITNESS)

    p = sub.add_parser("scan", parents=[common], help="spin expectation versus Z")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--kinds", default=",".join(k.value for k in SpinKind))
    p.add_argument("--z-min", type=int, default=1)
    p.add_argument("--z-max", type=int, default=Z_MAX)
    p.add_argument("--axis", type=int, default=3)
    p.add_argument("--no-error-estimate", action="store_true", help="skip the doubled-order reference run")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--format", choices=("csv", "text"), default="text")
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("energy", parents=[common], help="bound-state energy")
    p.add_argument("--format", choices=("csv", "text"), default="text")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--j", default="1/2")
    p.add_argument("--z", type=int, required=True)

    p = sub.add_parser("state", parents=[common], help="dump the momentum-space ground state")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--orientation", choices=("up", "down"), default="up")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.alpha_el, args.radial_order, args.angular_order, args.seed, args.out, args.format)
        if args.command == "table1":
            return cmd_table1(cfg, args.samples, args.tolerance, args.witness)
        if args.command == "scan":
            return cmd_scan(cfg, args.kinds, args.z_min, args.z_max, args.axis, not args.no_error_estimate)
        if args.command == "verify":
            return cmd_verify(cfg, args.samples)
        if args.command == "energy":
            return cmd_energy(cfg, args.n, args.j, args.z)
        return cmd_state(cfg, args.z, args.orientation)
    except UsageError as exc:
        print(f"relspin {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"relspin {args.command}: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"relspin {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
