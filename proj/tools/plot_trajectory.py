#!/usr/bin/env python3
"""Plot a trajectory table produced by `pegame simulate`.

Reads the tab-separated trajectory file (columns t, x_P, y_P, v_Px, v_Py,
x_E, y_E, a_P, theta_P, v_E, theta_E), draws both paths in the plane with
start markers and the final positions, and writes a PNG next to the input
(or to --out).
"""

import argparse
import csv
import pathlib
import sys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("trajectory", type=pathlib.Path, help="trajectory.tsv from `pegame simulate`")
    ap.add_argument("-o", "--out", type=pathlib.Path, default=None, help="output image path")
    args = ap.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("error: matplotlib is required (pip install matplotlib)", file=sys.stderr)
        return 1

    with args.trajectory.open(newline="") as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))
    if not rows:
        print(f"error: {args.trajectory} has no data rows", file=sys.stderr)
        return 1

    t = [float(r["t"]) for r in rows]
    xp = [float(r["x_P"]) for r in rows]
    yp = [float(r["y_P"]) for r in rows]
    xe = [float(r["x_E"]) for r in rows]
    ye = [float(r["y_E"]) for r in rows]

    fig, ax = plt.subplots(figsize=(7, 7))
    ax.plot(xp, yp, "-", color="tab:blue", label="pursuer")
    ax.plot(xe, ye, "-", color="tab:red", label="evader")
    ax.plot(xp[0], yp[0], "o", color="tab:blue")
    ax.plot(xe[0], ye[0], "o", color="tab:red")
    ax.plot(xp[-1], yp[-1], "x", color="black", markersize=9, label=f"final (t={t[-1]:.3f})")
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend()
    ax.grid(True, alpha=0.3)

    out = args.out or args.trajectory.with_suffix(".png")
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
