"""Indicator sets for restrictions and observability regions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import GridFunction

__all__ = ["IndicatorSet", "restrict"]

_KINDS = ("full", "ball_complement", "periodic_slabs", "mask")


@dataclass(frozen=True, eq=False)
class IndicatorSet:
    """A measurable set Omega described by one of a few concrete families.

    * ``full``: all of R^dim
    * ``ball_complement``: {|x - center| > radius}
    * ``periodic_slabs``: {frac((x_axis - offset)/period) < fill}
    * ``mask``: an explicit boolean array on one particular grid
    """

    kind: str
    center: tuple = ()
    radius: float = 0.0
    period: float = 1.0
    fill: float = 1.0
    offset: float = 0.0
    axis: int = 0
    mask: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown set kind {self.kind!r}")
        if self.kind == "periodic_slabs":
            if not (0 < self.fill <= 1):
                raise ValueError("fill fraction must lie in (0, 1]")
            if not self.period > 0:
                raise ValueError("period must be positive")
        if self.kind == "ball_complement" and self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.kind == "mask":
            if self.mask is None:
                raise ValueError("mask sets need a mask array")
            m = np.array(self.mask, dtype=bool)
            m.setflags(write=False)
            object.__setattr__(self, "mask", m)

    @classmethod
    def full(cls) -> "IndicatorSet":
        return cls("full")

    @classmethod
    def ball_complement(cls, center, radius: float) -> "IndicatorSet":
        return cls("ball_complement", center=tuple(float(c) for c in center),
                   radius=float(radius))

    @classmethod
    def periodic_slabs(cls, period: float, fill: float, offset: float = 0.0,
                       axis: int = 0) -> "IndicatorSet":
        return cls("periodic_slabs", period=float(period), fill=float(fill),
                   offset=float(offset), axis=int(axis))

    @classmethod
    def explicit(cls, mask) -> "IndicatorSet":
        return cls("mask", mask=mask)

    def indicator(self, coords) -> np.ndarray:
        """Boolean membership at the points given by meshgrid ``coords``."""
        shape = coords[0].shape
        if self.kind == "full":
            return np.ones(shape, dtype=bool)
        if self.kind == "ball_complement":
            if len(self.center) != len(coords):
                raise ValueError("ball center dimension mismatch")
            r2 = sum((c - x0) ** 2 for c, x0 in zip(coords, self.center))
            return r2 > self.radius ** 2
        if self.kind == "periodic_slabs":
            if self.fill == 1:
                return np.ones(shape, dtype=bool)
            phase = np.mod((coords[self.axis] - self.offset) / self.period, 1.0)
            return phase < self.fill
        if self.mask.shape != shape:
            raise ValueError(f"mask shape {self.mask.shape} does not match grid {shape}")
        return self.mask

    def mask_for(self, f: GridFunction) -> np.ndarray:
        return self.indicator(f.coords)

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "ball_complement":
            d.update(center=list(self.center), radius=self.radius)
        elif self.kind == "periodic_slabs":
            d.update(period=self.period, fill=self.fill, offset=self.offset, axis=self.axis)
        return d

    @classmethod
    def from_dict(cls, d: dict, dim: int) -> "IndicatorSet":
        kind = d.get("kind", "full")
        if kind == "full":
            return cls.full()
        if kind == "ball_complement":
            return cls.ball_complement(d.get("center", [0.0] * dim), d["radius"])
        if kind == "periodic_slabs":
            return cls.periodic_slabs(d.get("period", 1.0), d.get("fill", 0.5),
                                      d.get("offset", 0.0), d.get("axis", 0))
        raise ValueError(f"set kind {kind!r} cannot be read from a config")


def restrict(f: GridFunction, omega: IndicatorSet) -> GridFunction:
    """Pointwise product of f with the indicator of Omega."""
    return f.with_samples(np.where(omega.mask_for(f), f.samples, 0.0))
