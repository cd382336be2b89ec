"""Figure rendering for the report path (optional; CSV stays the contract).

Every plotting entry point takes already-computed data and writes a PNG next
to the delimited output.  Nothing here feeds back into the solver.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .driver import ErrorReport, Snapshot

__all__ = [
    "save_snapshot_figure",
    "save_waterfall_figure",
    "save_convergence_figure",
]


def save_snapshot_figure(snapshot: Snapshot, path: str | Path) -> Path:
    """u and chi versus x at the snapshot time, side by side."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, (ax_u, ax_chi) = plt.subplots(1, 2, figsize=(9.0, 3.4))
    ax_u.plot(snapshot.x, snapshot.u, lw=1.0)
    ax_u.set_xlabel("x")
    ax_u.set_ylabel("u")
    ax_chi.plot(snapshot.x, snapshot.chi, lw=1.0, color="tab:red")
    ax_chi.set_xlabel("x")
    ax_chi.set_ylabel(r"$\chi$")
    fig.suptitle(f"t = {snapshot.t:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_waterfall_figure(
    snapshots: Sequence[Snapshot], kappa: float, path: str | Path
) -> Path:
    """Strain traces u_x + kappa*t stacked over the snapshot times."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for snap in snapshots:
        ax.plot(snap.x, snap.ux + kappa * snap.t, lw=0.9, label=f"t = {snap.t:g}")
    ax.set_xlabel("x")
    ax.set_ylabel(r"$u_x + \kappa t$" if kappa else r"$u_x$")
    if len(snapshots) <= 8:
        ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_convergence_figure(reports: Sequence[ErrorReport], path: str | Path) -> Path:
    """Log-log errors versus grid size with a third-order guide line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ns = [r.n for r in reports]
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    ax.loglog(ns, [r.err_u for r in reports], "o-", label="err(u)")
    ax.loglog(ns, [r.err_chi for r in reports], "s-", label=r"err($\chi$)")
    if len(ns) >= 2:
        anchor = reports[0].err_u
        ax.loglog(
            ns,
            [anchor * (ns[0] / n) ** 3 for n in ns],
            "k--", lw=0.8, label="3rd order",
        )
    ax.set_xlabel("N")
    ax.set_ylabel("max mixed error")
    ax.legend(fontsize=8, frameon=False)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
