"""Spin expectation <S_3> versus Z for all six operators.

Writes the scan CSV and, if matplotlib is available, a PNG of the curves.

    python3 scripts/z_scan.py --out zscan.csv --plot zscan.png
"""
import argparse
import csv
import sys

from relspin.cli import main as cli_main
from relspin.operators import SpinKind


def plot(csv_path, png_path):
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; skipping plot", file=sys.stderr)
        return
    with open(csv_path) as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    fig, ax = plt.subplots(figsize=(6, 4))
    for kind in SpinKind:
        pts = [(int(r["Z"]), float(r["value"])) for r in rows if r["kind"] == kind.value]
        if pts:
            ax.plot(*zip(*pts), label=kind.value)
    ax.set_xlabel("Z")
    ax.set_ylabel(r"$\langle S_3 \rangle$ / $\hbar$")
    ax.set_ylim(0.0, 1.0)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="zscan.csv")
    ap.add_argument("--plot", default=None, help="PNG path (needs matplotlib)")
    ap.add_argument("--z-max", type=int, default=137)
    ap.add_argument("--no-error-estimate", action="store_true")
    args = ap.parse_args()
    argv = ["scan", "--out", args.out, "--z-max", str(args.z_max)]
    if args.no_error_estimate:
        argv.append("--no-error-estimate")
    status = cli_main(argv)
    if status == 0 and args.plot:
        plot(args.out, args.plot)
    sys.exit(status)
