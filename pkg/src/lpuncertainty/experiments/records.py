"""Experiment records: fixed-schema JSON plus (t, value) CSV series."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..params import INF, format_index

__all__ = ["ExperimentRecord", "predicted", "to_jsonable", "dumps", "fmt17", "fmt6"]

FIELDS = ("tag", "params", "measured", "predicted", "ok", "tolerances", "provenance")


def fmt17(x: float) -> str:
    """Round-trip representation with 17 significant digits."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def fmt6(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, float, np.floating, np.integer)):
        return "%.6g" % float(x)
    return str(x)


def to_jsonable(obj):
    """Plain JSON types; exact indices become strings like "3/2" and "inf"."""
    if obj is INF:
        return "inf"
    if isinstance(obj, Fraction):
        return format_index(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_str(k)}: {_emit(obj[k], indent, level + 1)}' for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        s = fmt17(obj)
        return s if math.isfinite(obj) else _str(s)
    return _str(obj)


def _str(s) -> str:
    return json.dumps(str(s), ensure_ascii=False)


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    return _emit(to_jsonable(obj), 2, 0) + "\n"


def predicted(value, formula: str) -> dict:
    """A predicted quantity together with the formula that produced it."""
    return {"value": value, "formula": formula}


@dataclass
class ExperimentRecord:
    tag: str
    params: dict = field(default_factory=dict)
    measured: dict = field(default_factory=dict)
    predicted: dict = field(default_factory=dict)
    ok: bool | None = None
    tolerances: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, entry in self.predicted.items():
            if not (isinstance(entry, dict) and "value" in entry and "formula" in entry):
                raise ValueError(f"predicted value {name!r} needs a formula tag")

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in FIELDS}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def add_series(self, name: str, columns, rows) -> None:
        self.series[name] = (tuple(columns), [tuple(r) for r in rows])

    def summary(self) -> str:
        verdict = {True: "PASS", False: "FAIL", None: "RECORDED"}[None if self.ok is None
                                                                  else bool(self.ok)]
        parts = [f"{k}={fmt6(v)}" for k, v in sorted(self.measured.items())
                 if isinstance(v, (int, float, bool, np.floating))]
        parts += [f"predicted.{k}={fmt6(v['value'])}" for k, v in sorted(self.predicted.items())
                  if isinstance(v["value"], (int, float, np.floating))]
        return f"[{verdict}] {self.tag}: " + " ".join(parts)

    def write(self, out_dir, stem: str | None = None, plots: bool = True) -> Path:
        """Write ``<stem>.json`` and one ``<stem>_<series>.csv`` (+ PNG) per series."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = stem or self.tag
        path = out / f"{stem}.json"
        path.write_text(self.to_json())
        for name, (cols, rows) in sorted(self.series.items()):
            csv_path = out / f"{stem}_{name}.csv"
            with csv_path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(cols)
                for row in rows:
                    w.writerow([fmt17(v) if isinstance(v, (float, np.floating)) else v
                                for v in row])
            if plots:
                from ..plotting import plot_series
                plot_series(csv_path.with_suffix(".png"), cols, rows, title=f"{self.tag}: {name}")
        return path
