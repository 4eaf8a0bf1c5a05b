"""Sample plots for the CSV tables written by ``python -m app.cli``.

Usage:
    python docs/plot_results.py results/driven
    python docs/plot_results.py results/static_full --save static.png
"""

from __future__ import annotations

import sys
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd


def read_table(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def plot_static_scan(ax, path: Path) -> None:
    df = read_table(path)
    x0_nm = df["x0_m"] * 1e9
    for column in df.columns:
        if column.startswith("R"):
            ax.plot(x0_nm, df[column], marker=".", label=column)
    ax.set_xlabel("x0 [nm]")
    ax.set_ylabel("R")
    ax.legend()


def plot_z_density(ax, path: Path) -> None:
    df = read_table(path)
    ax.semilogy(df["z"], df["rho_z"].clip(lower=1e-16), label=path.stem)
    ax.set_xlabel("z")
    ax.set_ylabel("rho(z)")
    ax.legend()


def plot_momentum_density(ax, path: Path) -> None:
    df = read_table(path)
    df = df[df["k_per_m"] > 0]
    ax.plot(df["k_per_m"], df["rho_k_m"], label=path.stem)
    ax.set_xlabel("k [1/m]")
    ax.set_ylabel("rho(k) [m]")
    ax.legend()


def main(argv: list[str]) -> int:
    if not argv:
        print(__doc__)
        return 1
    directory = Path(argv[0])
    save = argv[argv.index("--save") + 1] if "--save" in argv else None

    panels = []
    if (directory / "static_scan.csv").exists():
        panels.append((plot_static_scan, [directory / "static_scan.csv"]))
    z_files = sorted(directory.glob("z_density*.csv"))
    if z_files:
        panels.append((plot_z_density, z_files))
    k_files = sorted(directory.glob("*momentum_density*.csv"))
    if k_files:
        panels.append((plot_momentum_density, k_files))
    if not panels:
        print(f"no known tables in {directory}")
        return 1

    fig, axes = plt.subplots(len(panels), 1, figsize=(7, 3.5 * len(panels)), squeeze=False)
    for ax, (plot, files) in zip(axes[:, 0], panels):
        for path in files:
            plot(ax, path)
    fig.tight_layout()
    if save:
        fig.savefig(save, dpi=150)
    else:
        plt.show()
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
