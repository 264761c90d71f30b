"""
ENVELOPE FIGURE
===============

The graph of f(x) = max{1, log(1/x)}·x on (0, 1.5], the shape of the
reversed W₁ bound in one dimension, optionally scaled by a fitted
constant C and overlaid with sweep points (d_BL, W₁).

  f(x) = x            for x ≥ 1/e
  f(x) = x·log(1/x)   for x < 1/e

The SVG is byte-stable: a fixed hash salt and no date metadata.
"""

from pathlib import Path
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

X_MAX = 1.5
SAMPLE_COUNT = 600
# Points always present among the samples
MARKED_POINTS = (np.exp(-2.0), np.exp(-1.0), 1.0)


def envelope(x):
    """
    max{1, log(1/x)}·x for x > 0.

    Example:
        >>> float(envelope(np.exp(-2.0)))
        0.2706705664732254
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("the envelope is defined for x > 0 only")
    return np.maximum(1.0, -np.log(x)) * x


def envelope_samples(x_max: float = X_MAX, count: int = SAMPLE_COUNT) -> Tuple[np.ndarray, np.ndarray]:
    """Geometric grid on (0, x_max] plus the marked points, with f on it."""
    grid = np.geomspace(1e-4, x_max, count)
    x = np.union1d(grid, [p for p in MARKED_POINTS if p <= x_max])
    return x, envelope(x)


def plot_envelope(
    output_path: Path,
    scatter: Optional[Sequence[Tuple[float, float]]] = None,
    constant: Optional[float] = None,
    x_max: float = X_MAX,
) -> Path:
    """
    Write the envelope figure as SVG.

    Args:
        output_path: target file; its directory must exist
        scatter: (d_BL, W₁) points to overlay
        constant: fitted C; the curve C·f(x) is drawn next to f(x)

    Raises:
        OSError: the path is not writable
    """
    output_path = Path(output_path)
    x, y = envelope_samples(x_max)

    with plt.rc_context({"svg.hashsalt": "envelope", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.plot(x, y, color="black", lw=1.5, label=r"$\max\{1, \log(1/x)\}\,x$")
        if constant is not None and np.isfinite(constant):
            ax.plot(x, constant * y, color="tab:blue", lw=1.0, linestyle="--",
                    label=f"C = {constant:.4g}")
        if scatter:
            points = np.asarray(scatter, dtype=float)
            ax.scatter(points[:, 0], points[:, 1], s=14, color="tab:red", zorder=3,
                       label=r"sweep $(d_{BL}, W_1)$")
        ax.axvline(np.exp(-1.0), color="grey", lw=0.6, linestyle=":")
        ax.set_xlim(0.0, x_max)
        ax.set_ylim(bottom=0.0)
        ax.set_xlabel(r"$d_{BL}$")
        ax.set_ylabel(r"$W_1$")
        ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
        try:
            fig.savefig(output_path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return output_path
