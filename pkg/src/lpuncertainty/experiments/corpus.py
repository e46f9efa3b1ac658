"""Seeded families of smooth, truncation-safe test functions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..field.grid import GridFunction
from ..oracles import GaussianPacket

__all__ = ["PacketFamily", "random_corpus", "sum_packets", "corpus_functions"]

MAX_TERMS = 5
SIGMA_RANGE = (0.5, 2.0)


def sum_packets(packets, half_width: float, n_points: int) -> GridFunction:
    first = packets[0]
    probe = first.sample(half_width, n_points)
    total = np.zeros(probe.shape, dtype=complex)
    for g in packets:
        total += g(*probe.coords)
    return probe.with_samples(total)


def random_corpus(seed: int, size: int, dim: int, half_width: float) -> list[list[GaussianPacket]]:
    """``size`` random sums of 1..5 Gaussians exp(-|x-c|^2 / (2 sigma^2)).

    sigma is uniform in [1/2, 2]; centers are uniform in the inner half-box
    [-L/2, L/2]^dim; amplitudes have modulus in [1/2, 3/2] and random phase.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(size):
        k = int(rng.integers(1, MAX_TERMS + 1))
        terms = []
        for _ in range(k):
            sigma = rng.uniform(*SIGMA_RANGE)
            center = rng.uniform(-half_width / 2, half_width / 2, size=dim)
            amp = rng.uniform(0.5, 1.5) * np.exp(2j * np.pi * rng.uniform())
            terms.append(GaussianPacket(dim=dim, amplitude=amp, width=1.0 / (2 * sigma * sigma),
                                        center=center))
        out.append(terms)
    return out


def corpus_functions(seed: int, size: int, dim: int, half_width: float,
                     n_points: int) -> list[GridFunction]:
    return [sum_packets(p, half_width, n_points)
            for p in random_corpus(seed, size, dim, half_width)]


_TAGS = ("gaussian_sweep", "translated", "random_corpus")


@dataclass(frozen=True)
class PacketFamily:
    """A parametrized family of grid functions.

    * ``gaussian_sweep``: one Gaussian exp(-w|x|^2), parameter vector ``(log w,)``
    * ``translated``: K equal Gaussians (width ``width``) at random unit
      directions scaled by ``spread``; parameter vector ``(spread,)``
    * ``random_corpus``: ``size`` seeded corpus members (no parameters)
    """

    tag: str
    dim: int = 1
    half_width: float = 20.0
    n_points: int = 1024
    width: float = 1.0
    K: int = 1
    seed: int = 0
    size: int = 1
    bounds: tuple = field(default=((-2.0, 2.0),))

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown family {self.tag!r}")

    def _directions(self):
        rng = np.random.default_rng(self.seed)
        v = rng.normal(size=(self.K, self.dim))
        return v / np.linalg.norm(v, axis=1, keepdims=True)

    def packets(self, theta) -> list[GaussianPacket]:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if self.tag == "gaussian_sweep":
            return [GaussianPacket(dim=self.dim, width=float(np.exp(theta[0])))]
        if self.tag == "translated":
            spread = float(theta[0])
            return [GaussianPacket(dim=self.dim, width=self.width, center=spread * d)
                    for d in self._directions()]
        raise ValueError("random_corpus members are not parametrized")

    def member(self, theta) -> GridFunction:
        return sum_packets(self.packets(theta), self.half_width, self.n_points)

    def members(self) -> list[GridFunction]:
        if self.tag == "random_corpus":
            return corpus_functions(self.seed, self.size, self.dim, self.half_width,
                                    self.n_points)
        lo, hi = self.bounds[0]
        return [self.member([v]) for v in np.linspace(lo, hi, max(self.size, 2))]

    def to_dict(self) -> dict:
        return {"tag": self.tag, "dim": self.dim, "half_width": self.half_width,
                "n_points": self.n_points, "width": self.width, "K": self.K,
                "seed": self.seed, "size": self.size, "bounds": [list(b) for b in self.bounds]}
