"""Uniform box grids and the sampled-function carrier."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

# desk-scale caps on points per axis
MAX_POINTS = {1: 4096, 2: 1024, 3: 128}

# boundary samples above this fraction of the peak flag truncation
TAIL_TOLERANCE = 1e-8


class TruncationWarning(UserWarning):
    """The sampled function is not small on the boundary layer of its box."""


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples on the box [-L, L)^dim with N points per axis.

    Grid nodes are ``x_j = -L + j*h`` with ``h = 2L/N``; the origin is the
    node ``j = N/2``.  Samples are stored as an immutable array of shape
    ``(N,)*dim`` in row-major order.
    """

    samples: np.ndarray
    half_width: float

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.complex128, order="C", copy=True)
        dim = arr.ndim
        if dim not in MAX_POINTS:
            raise ValueError(f"grid dimension must be 1, 2 or 3, got {dim}")
        n = arr.shape[0]
        if any(s != n for s in arr.shape):
            raise ValueError(f"all axes must have the same length, got {arr.shape}")
        if not _is_power_of_two(n) or n < 4:
            raise ValueError(f"points per axis must be a power of two >= 4, got {n}")
        if n > MAX_POINTS[dim]:
            raise ValueError(f"{n} points per axis exceeds the {dim}-D limit {MAX_POINTS[dim]}")
        L = float(self.half_width)
        if not (L > 0 and math.isfinite(L)):
            raise ValueError("half_width must be a positive finite number")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "half_width", L)

    @classmethod
    def from_function(cls, fn, dim: int, half_width: float, n_points: int) -> "GridFunction":
        """Sample ``fn(*coords)`` on the grid; ``coords`` are meshgrid arrays."""
        probe = cls(np.zeros((n_points,) * dim), half_width)
        return probe.with_samples(np.broadcast_to(fn(*probe.coords), probe.shape))

    @property
    def dim(self) -> int:
        return self.samples.ndim

    @property
    def n_points(self) -> int:
        return self.samples.shape[0]

    @property
    def shape(self) -> tuple[int, ...]:
        return self.samples.shape

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    @cached_property
    def axis(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.n_points)

    @cached_property
    def coords(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*([self.axis] * self.dim), indexing="ij"))

    def radius(self, center=None) -> np.ndarray:
        """|x - center| at every node."""
        center = np.zeros(self.dim) if center is None else np.asarray(center, dtype=float)
        if center.shape != (self.dim,):
            raise ValueError(f"center must have {self.dim} components")
        r2 = sum((c - x0) ** 2 for c, x0 in zip(self.coords, center))
        return np.sqrt(r2)

    def node_index(self, point, rtol: float = 1e-9):
        """Index tuple of the node at ``point``, or None if it is off-grid."""
        point = np.asarray(point, dtype=float)
        j = (point + self.half_width) / self.spacing
        jr = np.rint(j)
        if np.any(np.abs(j - jr) > rtol * max(1.0, float(np.max(np.abs(j))))):
            return None
        if np.any(jr < 0) or np.any(jr >= self.n_points):
            return None
        return tuple(int(v) for v in jr)

    def same_grid(self, other: "GridFunction") -> bool:
        return self.shape == other.shape and self.half_width == other.half_width

    def with_samples(self, samples) -> "GridFunction":
        return GridFunction(samples, self.half_width)

    @cached_property
    def tail(self) -> float:
        """Largest boundary-layer modulus relative to the peak modulus."""
        mod = np.abs(self.samples)
        peak = mod.max()
        if peak == 0:
            return 0.0
        w = max(1, self.n_points // 32)
        edge = 0.0
        for ax in range(self.dim):
            lo = np.take(mod, np.arange(w), axis=ax)
            hi = np.take(mod, np.arange(self.n_points - w, self.n_points), axis=ax)
            edge = max(edge, lo.max(), hi.max())
        return float(edge / peak)

    def truncation_safe(self, tol: float = TAIL_TOLERANCE) -> bool:
        return self.tail <= tol

    def warn_if_truncated(self, what: str, tol: float = TAIL_TOLERANCE) -> bool:
        if self.tail > tol:
            warnings.warn(
                f"{what}: boundary tail {self.tail:.3g} exceeds {tol:.1g}; enlarge the box",
                TruncationWarning,
                stacklevel=3,
            )
            return True
        return False

    def __add__(self, other):
        if isinstance(other, GridFunction):
            if not self.same_grid(other):
                raise ValueError("grid mismatch")
            return self.with_samples(self.samples + other.samples)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            if not self.same_grid(other):
                raise ValueError("grid mismatch")
            return self.with_samples(self.samples - other.samples)
        return NotImplemented

    def __mul__(self, c):
        if isinstance(c, (int, float, complex, np.number)):
            return self.with_samples(self.samples * c)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_samples(-self.samples)

    def __repr__(self):
        return (f"GridFunction(dim={self.dim}, N={self.n_points}, "
                f"L={self.half_width:g}, tail={self.tail:.2g})")
