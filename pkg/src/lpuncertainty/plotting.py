"""PNG renderings of record series, written next to their CSV files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["plot_series"]


def plot_series(path, columns, rows, title: str = "") -> Path:
    """Plot every column against the first; log-log when all values are positive."""
    path = Path(path)
    data = np.array([[float(v) for v in r] for r in rows], dtype=float) if rows else \
        np.zeros((0, len(columns)))
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    if data.shape[0]:
        x = data[:, 0]
        for j, name in enumerate(columns[1:], start=1):
            ax.plot(x, data[:, j], "o-", ms=3, lw=1.2, label=name)
        finite = data[np.isfinite(data).all(axis=1)]
        if finite.size and np.all(finite > 0) and finite.shape[0] > 1:
            ax.set_xscale("log")
            ax.set_yscale("log")
    ax.set_xlabel(columns[0])
    ax.set_title(title, fontsize=9)
    if len(columns) > 1:
        ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    # fixed metadata keeps PNG bytes stable across reruns
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path
