"""Render figures from sweep tables and equilibrium surfaces.

All functions take already-computed data (sweep rows or policy surfaces) and
write PNG files.  The CSV tables remain the normative output; figures are a
convenience layer on top and never feed back into any computation.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .solver import ExtremalEquilibria

__all__ = ["render_sweep_figures", "render_surface_figures"]

_SWEEP_PANELS = (
    ("ber", "Bit error rate", "sweep_ber.png", True),
    ("bits_per_symbol", "Bits per symbol", "sweep_bits.png", False),
    ("broadcast_rate", "Broadcast rate", "sweep_broadcast.png", False),
    ("avg_cost1", "Average cost, user 1", "sweep_cost1.png", False),
    ("avg_cost2", "Average cost, user 2", "sweep_cost2.png", False),
)


def render_sweep_figures(header: list[str], rows: list[list[str]], out_dir: str) -> list[str]:
    """Render one PNG per sweep metric; return the written paths.

    Parameters
    ----------
    header, rows : CSV content as produced by the sweep command.
    out_dir : directory the PNGs are written into.
    """
    col = {name: i for i, name in enumerate(header)}
    for needed in ("strategy", "avg_snr_db"):
        if needed not in col:
            raise ValueError(f"sweep table is missing the {needed!r} column")
    by_strategy: dict[str, list[list[str]]] = {}
    order: list[str] = []
    for row in rows:
        name = row[col["strategy"]]
        if name not in by_strategy:
            by_strategy[name] = []
            order.append(name)
        by_strategy[name].append(row)

    os.makedirs(out_dir, exist_ok=True)
    written = []
    for metric, label, fname, log_y in _SWEEP_PANELS:
        if metric not in col:
            continue
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for name in order:
            pts = by_strategy[name]
            x = [float(r[col["avg_snr_db"]]) for r in pts]
            y = [float(r[col[metric]]) for r in pts]
            if log_y:
                # zero BER points cannot sit on a log axis; drop them per line
                xy = [(a, b) for a, b in zip(x, y) if b > 0]
                if not xy:
                    continue
                x, y = zip(*xy)
                ax.semilogy(x, y, marker="o", markersize=3, label=name)
            else:
                ax.plot(x, y, marker="o", markersize=3, label=name)
        ax.set_xlabel("Average SNR (dB)")
        ax.set_ylabel(label)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
        fig.tight_layout()
        path = os.path.join(out_dir, fname)
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written


def render_surface_figures(eq: ExtremalEquilibria, out_dir: str) -> list[str]:
    """Render the four equilibrium action surfaces as heat maps."""
    os.makedirs(out_dir, exist_ok=True)
    panels = (
        ("surface_largest_user1.png", eq.largest.actions1, "Largest equilibrium, user 1"),
        ("surface_largest_user2.png", eq.largest.actions2, "Largest equilibrium, user 2"),
        ("surface_smallest_user1.png", eq.smallest.actions1, "Smallest equilibrium, user 1"),
        ("surface_smallest_user2.png", eq.smallest.actions2, "Smallest equilibrium, user 2"),
    )
    g1 = np.asarray(eq.grid.levels1)
    g2 = np.asarray(eq.grid.levels2)
    written = []
    for fname, surface, title in panels:
        fig, ax = plt.subplots(figsize=(5.0, 4.2))
        im = ax.imshow(
            surface,
            origin="lower",
            aspect="auto",
            interpolation="nearest",
            extent=(g2[0], g2[-1], g1[0], g1[-1]),
        )
        ax.set_xlabel("SNR of user 2")
        ax.set_ylabel("SNR of user 1")
        ax.set_title(title, fontsize=10)
        fig.colorbar(im, ax=ax, label="modulation exponent")
        fig.tight_layout()
        path = os.path.join(out_dir, fname)
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
