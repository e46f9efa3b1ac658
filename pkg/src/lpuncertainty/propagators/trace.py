"""Time-indexed snapshot sequences and their on-disk form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..field.grid import GridFunction
from ..field.io import load_grid, save_grid

__all__ = ["EvolutionTrace", "save_trace", "load_trace"]


@dataclass(frozen=True, eq=False)
class EvolutionTrace:
    """Snapshots ``u(t_0), ..., u(t_M)`` on one grid at uniform spacing ``dt``.

    ``dt`` is the sample spacing of the stored snapshots; ``step`` is the
    integrator step that produced them (equal unless snapshots were thinned).
    """

    equation: str
    times: np.ndarray
    snapshots: tuple
    dt: float
    method: str = ""
    step: float | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        times.setflags(write=False)
        snaps = tuple(self.snapshots)
        if times.ndim != 1 or times.size == 0 or times.size != len(snaps):
            raise ValueError("need one snapshot per time sample")
        if times.size > 1:
            steps = np.diff(times)
            if not np.all(steps > 0):
                raise ValueError("times must increase")
            if not np.allclose(steps, self.dt, rtol=1e-9, atol=1e-12):
                raise ValueError("times are not uniformly spaced by dt")
        first = snaps[0]
        if any(not s.same_grid(first) for s in snaps[1:]):
            raise ValueError("all snapshots must share one grid")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "snapshots", snaps)
        object.__setattr__(self, "dt", float(self.dt))
        if self.step is None:
            object.__setattr__(self, "step", float(self.dt))

    def __len__(self):
        return len(self.snapshots)

    @property
    def final(self) -> GridFunction:
        return self.snapshots[-1]

    @property
    def grid(self) -> GridFunction:
        return self.snapshots[0]

    def at(self, t: float) -> GridFunction:
        """Snapshot at sample time ``t`` (must be a sample)."""
        i = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[i] - t) > 1e-9 * max(1.0, abs(t)):
            raise KeyError(f"t = {t} is not a sample time")
        return self.snapshots[i]


def save_trace(trace: EvolutionTrace, directory) -> Path:
    """Write snapshots as grid binaries plus ``manifest.json``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = []
    for i, snap in enumerate(trace.snapshots):
        name = f"snap_{i:05d}.grid"
        save_grid(snap, directory / name, {"time": float(trace.times[i]), "index": i})
        files.append(name)
    manifest = {
        "equation": trace.equation,
        "method": trace.method,
        "dt": trace.dt,
        "step": trace.step,
        "times": [float(t) for t in trace.times],
        "files": files,
        "parameters": trace.params,
    }
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return directory


def load_trace(directory) -> EvolutionTrace:
    directory = Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text())
    snaps = [load_grid(directory / name) for name in manifest["files"]]
    return EvolutionTrace(manifest["equation"], manifest["times"], snaps, manifest["dt"],
                          manifest.get("method", ""), manifest.get("step"),
                          manifest.get("parameters", {}))
