#!/usr/bin/env python3
"""Plot the three-panel comparison dataset written by `igwave --fig1`.

usage: igwave --fig1 --out fig1.csv && python3 scripts/plot_fig1.py fig1.csv [out.png]
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

CURVES = [("eta_exact", "exact", "-"), ("eta_macdonald", "Macdonald", "--"), ("eta_airy", "Airy", ":")]


def load(path):
    panels = defaultdict(list)
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            panels[float(row["y_over_H"])].append(row)
    return panels


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    out = sys.argv[2] if len(sys.argv) > 2 else "fig1.png"
    panels = load(sys.argv[1])
    fig, axes = plt.subplots(len(panels), 1, sharex=True, figsize=(6, 2.6 * len(panels)))
    axes = axes if len(panels) > 1 else [axes]
    for ax, (y, rows) in zip(axes, sorted(panels.items(), reverse=True)):
        for key, label, style in CURVES:
            if key not in rows[0]:
                continue
            pts = [(float(r["M"]), float(r[key])) for r in rows if r[key]]
            if pts:
                m, eta = zip(*pts)
                ax.plot(m, eta, style, label=label)
        ax.set_title(f"y/H = {y:g}")
        ax.set_ylabel("η")
        ax.axvline(1.0, color="0.8", lw=0.8)
    axes[-1].set_xlabel("M")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)


if __name__ == "__main__":
    main()
