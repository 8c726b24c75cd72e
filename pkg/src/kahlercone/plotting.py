"""Figures written next to CSV reports (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 4.0),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
    "font.size": 9,
}
# no timestamps or version strings in the files
_PNG_META = {"Software": None}


def figure_path(out, suffix):
    out = Path(out)
    return out.with_name(f"{out.stem}_{suffix}.png")


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_META)
    plt.close(fig)
    return path


def mass_figures(report, runs, out):
    """Tube masses against eps, and the density of alpha_eps^n at the finest eps."""
    paths = []
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        eps = [r.eps for r in report.rows]
        ax.loglog(eps, [r.tube_mass for r in report.rows], "o-", label="alpha_eps tube mass")
        ax.loglog(eps, [r.omega_tube_mass for r in report.rows], "s--", label="omega_eps tube mass")
        ax.axhline(0.5 * report.rows[0].tube_mass, color="0.5", lw=0.8, label="50% floor")
        ax.invert_xaxis()
        ax.set_xlabel("eps")
        ax.set_ylabel("mass")
        ax.set_title(f"n={report.n}, p={report.p}, {report.layout} {report.resolution}^2, {report.system}")
        ax.legend(frameon=False)
        paths.append(_save(fig, figure_path(out, "tube_mass")))

        from .mass.potentials import density

        sol = min(runs, key=lambda r: r.eps)
        dens = density(sol.alpha_eps, sol.n)
        a, b = sol.chart.axes
        fig, ax = plt.subplots(figsize=(4.8, 4.0))
        im = ax.pcolormesh(a, b, dens.T, shading="nearest", cmap="viridis")
        fig.colorbar(im, ax=ax, label="alpha_eps^n density")
        ax.set_aspect("equal")
        ax.set_xlabel("x1")
        ax.set_ylabel("y1" if sol.chart.layout != "tube" else "x2")
        ax.set_title(f"eps = {sol.eps:g}")
        ax.grid(False)
        paths.append(_save(fig, figure_path(out, "density")))
    return paths


def transport_figures(result, pairings, out):
    """Defects and pairing drift along the path."""
    paths = []
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        floor = 1e-18
        ax.semilogy(result.u, np.maximum(result.subbundle_defect, floor), label="subbundle defect")
        ax.semilogy(result.u, np.maximum(result.reality_defect, floor), label="reality defect")
        ax.set_xlabel("u")
        ax.set_ylabel("defect")
        ax.legend(frameon=False)
        paths.append(_save(fig, figure_path(out, "defects")))

        fig, ax = plt.subplots()
        for ps in pairings:
            ax.plot(result.u, ps.values - ps.values[0], label=f"{ps.cycle} (p={ps.p})")
        ax.set_xlabel("u")
        ax.set_ylabel("pairing(u) - pairing(0)")
        ax.legend(frameon=False)
        paths.append(_save(fig, figure_path(out, "pairings")))
    return paths
