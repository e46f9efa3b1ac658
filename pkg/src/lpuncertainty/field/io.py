"""Binary container for GridFunction plus JSON sidecar metadata.

Layout (all little-endian)::

    8 bytes   magic  b"LPUPGRID"
    uint32    format version (1)
    uint32    dim
    uint32    N (points per axis)
    float64   L (half-width)
    4 bytes   layout tag b"RMCP" (row-major, complex as float64 pairs)
    payload   N**dim pairs (re, im) of float64
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .grid import GridFunction

__all__ = ["MAGIC", "save_grid", "load_grid", "sidecar_path"]

MAGIC = b"LPUPGRID"
VERSION = 1
LAYOUT = b"RMCP"
_HEADER = struct.Struct("<8sIIId4s")


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def save_grid(f: GridFunction, path, metadata: dict | None = None) -> Path:
    """Write ``f`` to ``path`` and its metadata to ``path + '.json'``."""
    path = Path(path)
    header = _HEADER.pack(MAGIC, VERSION, f.dim, f.n_points, f.half_width, LAYOUT)
    payload = np.ascontiguousarray(f.samples).view("<f8").tobytes()
    path.write_bytes(header + payload)
    meta = {"dim": f.dim, "points_per_axis": f.n_points, "half_width": f.half_width,
            "spacing": f.spacing, "layout": LAYOUT.decode(), "tail": f.tail}
    meta.update(metadata or {})
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return path


def load_grid(path) -> GridFunction:
    """Read a grid written by :func:`save_grid`; validates header and size."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError("file too short for a grid header")
    magic, version, dim, n, L, layout = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError("not a grid file (bad magic)")
    if version != VERSION or layout != LAYOUT:
        raise ValueError(f"unsupported grid format version {version} / layout {layout!r}")
    count = n ** dim
    payload = raw[_HEADER.size:]
    if len(payload) != 16 * count:
        raise ValueError(f"payload holds {len(payload)} bytes, expected {16 * count}")
    vals = np.frombuffer(payload, dtype="<f8").reshape(-1, 2)
    return GridFunction((vals[:, 0] + 1j * vals[:, 1]).reshape((n,) * dim), L)
