import json
import struct

import numpy as np
import pytest

from lpuncertainty.field import GridFunction
from lpuncertainty.field.io import MAGIC, load_grid, save_grid, sidecar_path
from lpuncertainty.oracles import GaussianPacket
from lpuncertainty.propagators import EvolutionTrace, load_trace, save_trace


@pytest.mark.parametrize("dim,n", [(1, 64), (2, 16), (3, 8)])
def test_grid_round_trip_bitwise(tmp_path, rng, dim, n):
    vals = rng.standard_normal((n,) * dim) + 1j * rng.standard_normal((n,) * dim)
    f = GridFunction(vals, 3.5)
    path = save_grid(f, tmp_path / "f.grid", {"note": "x"})
    g = load_grid(path)
    assert g.same_grid(f)
    assert np.array_equal(g.samples, f.samples)
    meta = json.loads(sidecar_path(path).read_text())
    assert meta["dim"] == dim and meta["points_per_axis"] == n
    assert meta["half_width"] == 3.5 and meta["note"] == "x" and meta["layout"] == "RMCP"


def test_grid_file_size(tmp_path):
    f = GridFunction(np.ones((16, 16)), 2.0)
    path = save_grid(f, tmp_path / "f.grid")
    assert path.stat().st_size == struct.calcsize("<8sIIId4s") + 16 * 256


def test_save_is_deterministic(tmp_path):
    f = GaussianPacket(1, 1.0, 0.5).sample(10.0, 128)
    a = save_grid(f, tmp_path / "a.grid").read_bytes()
    b = save_grid(f, tmp_path / "b.grid").read_bytes()
    assert a == b


def _corrupt(path, offset, data):
    raw = bytearray(path.read_bytes())
    raw[offset:offset + len(data)] = data
    path.write_bytes(bytes(raw))


def test_bad_magic(tmp_path):
    path = save_grid(GridFunction(np.ones(8), 1.0), tmp_path / "f.grid")
    _corrupt(path, 0, b"NOTAGRID")
    with pytest.raises(ValueError, match="magic"):
        load_grid(path)


def test_bad_version(tmp_path):
    path = save_grid(GridFunction(np.ones(8), 1.0), tmp_path / "f.grid")
    _corrupt(path, len(MAGIC), struct.pack("<I", 7))
    with pytest.raises(ValueError, match="version"):
        load_grid(path)


def test_truncated_payload_and_header(tmp_path):
    path = save_grid(GridFunction(np.ones(8), 1.0), tmp_path / "f.grid")
    path.write_bytes(path.read_bytes()[:-3])
    with pytest.raises(ValueError, match="payload"):
        load_grid(path)
    path.write_bytes(b"LPUP")
    with pytest.raises(ValueError, match="short"):
        load_grid(path)


def test_trace_round_trip(tmp_path):
    g = GaussianPacket(1, 1.0, 0.5)
    times = np.linspace(0.0, 1.0, 5)
    snaps = [g.sample(16.0, 128) * np.exp(-t) for t in times]
    tr = EvolutionTrace("heat", times, snaps, 0.25, method="exact", params={"alpha": 0.5})
    back = load_trace(save_trace(tr, tmp_path / "tr"))
    assert back.equation == "heat" and back.method == "exact"
    assert back.dt == 0.25 and back.params == {"alpha": 0.5}
    assert np.array_equal(back.times, tr.times)
    assert all(np.array_equal(a.samples, b.samples) for a, b in zip(back.snapshots, snaps))
    manifest = json.loads((tmp_path / "tr" / "manifest.json").read_text())
    assert manifest["files"][0] == "snap_00000.grid"


def test_trace_rejects_nonuniform_times():
    f = GridFunction(np.ones(8), 1.0)
    with pytest.raises(ValueError):
        EvolutionTrace("heat", [0.0, 0.1, 0.3], [f, f, f], 0.1)
    with pytest.raises(ValueError):
        EvolutionTrace("heat", [0.0, 0.1], [f], 0.1)
