"""
GRID FUNCTIONS
==============

PURPOSE:
--------
A function tabulated on a finite, strictly increasing 1-D grid. Used for
numerically convolved densities, Gaussian-smoothed densities and CDF
differences.

CONVENTIONS:
------------
  • Between nodes the function is linear (np.interp).
  • Beyond the grid it equals `outside_value`.
  • Integrals use the trapezoid rule on the nodes; the only integration
    weight convention in this module.

DEBUGGING TIPS:
---------------
  • A density GridFunction should integrate to 1 within O(h^2)
  • If it does not, the grid probably cuts off mass: widen it
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate, signal


@dataclass(frozen=True)
class GridFunction:
    """Values on a strictly increasing grid, linear in between."""

    nodes: np.ndarray
    values: np.ndarray
    outside_value: float = 0.0

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ValueError("GridFunction needs a 1-D grid with at least 2 nodes")
        if values.shape != nodes.shape:
            raise ValueError(
                f"nodes and values lengths differ ({nodes.size} vs {values.size})"
            )
        if not np.all(np.diff(nodes) > 0):
            raise ValueError("GridFunction nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    @classmethod
    def tabulate(cls, func, lower: float, upper: float, count: int,
                 outside_value: float = 0.0) -> "GridFunction":
        """Evaluate a vectorized `func` on `count` uniform nodes of [lower, upper]."""
        nodes = np.linspace(lower, upper, count)
        return cls(nodes, np.asarray(func(nodes), dtype=float), outside_value)

    def __call__(self, x):
        return np.interp(x, self.nodes, self.values,
                         left=self.outside_value, right=self.outside_value)

    @property
    def spacing(self) -> float:
        """Largest node gap."""
        return float(np.max(np.diff(self.nodes)))

    def integral(self) -> float:
        """Trapezoid integral over the grid."""
        return float(integrate.trapezoid(self.values, self.nodes))

    def cumulative(self) -> np.ndarray:
        """Running trapezoid integral, starting at 0 on the first node."""
        return integrate.cumulative_trapezoid(self.values, self.nodes, initial=0.0)

    def moment(self, order: int) -> float:
        """Trapezoid integral of x^order · f(x)."""
        return float(integrate.trapezoid(self.nodes ** order * self.values, self.nodes))

    def l1_distance(self, other: "GridFunction") -> float:
        """Trapezoid integral of |self − other| on self's nodes."""
        return float(integrate.trapezoid(np.abs(self.values - other(self.nodes)), self.nodes))

    def normalized(self) -> "GridFunction":
        """Rescale values so the trapezoid integral is exactly 1."""
        total = self.integral()
        if total <= 0:
            raise ValueError("cannot normalize a GridFunction with nonpositive integral")
        return GridFunction(self.nodes, self.values / total, self.outside_value / total)


def uniform_grid(lower: float, upper: float, count: int) -> np.ndarray:
    """`count` equally spaced nodes on [lower, upper]."""
    if not upper > lower:
        raise ValueError(f"empty grid interval [{lower}, {upper}]")
    return np.linspace(lower, upper, count)


def convolve_on_grid(f: GridFunction, kernel_values: np.ndarray) -> GridFunction:
    """
    Discrete convolution f * k on f's uniform grid.

    `kernel_values` are samples of the kernel on the offsets
    (j - m // 2) * h, j = 0..m-1, with the same spacing h as f's grid.
    The result lives on f's nodes (`mode="same"`), i.e. the caller makes
    the grid wide enough to hold the convolution.
    """
    h = f.nodes[1] - f.nodes[0]
    if not np.allclose(np.diff(f.nodes), h, rtol=1e-9, atol=0.0):
        raise ValueError("convolve_on_grid needs a uniform grid")
    values = signal.fftconvolve(f.values, kernel_values, mode="same") * h
    values = np.clip(values, 0.0, None)
    return GridFunction(f.nodes, values, 0.0)
