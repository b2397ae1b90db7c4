"""Freeze reference <S_3> values computed at twice the default quadrature orders.

The test suite compares default-order results against this file at 1e-6.
Rerun only when the physics (not the numerics) is meant to change.
"""
import argparse
import csv
from pathlib import Path

from relspin.expectation import z_scan
from relspin.operators import SpinKind
from relspin.quadrature import GridConfig

REFERENCE_Z = (1, 10, 20, 40, 60, 80, 92, 100, 110, 120, 130, 136, 137)
DEFAULT_OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "zscan_regression.csv"

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    grid = GridConfig().doubled()
    results = z_scan(list(SpinKind), REFERENCE_Z, grid=grid, error_estimate=False)
    with open(args.out, "w", newline="") as fh:
        fh.write(f"# reference grid: radial_order={grid.radial_order} angular_order={grid.angular_order}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "Z", "value"])
        for r in results:
            w.writerow([r.kind.value, r.Z, f"{r.value:.15g}"])
    print(f"wrote {len(results)} rows to {args.out}")
