"""JSON report assembly and the CSV sidecar layouts.

CSV column orders are stable interfaces:

* scale grid:   ``q,p,U,valid``
* compare grid: ``q,p_market,p_white,U_market,U_white,valid_market,valid_white``
* width curve:  ``tau,width,q_minus,q_plus``

``U`` cells are empty where the potential is masked.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from ._io import atomic_write_csv, atomic_write_text

SCHEMA_VERSION = "1.0"
GRID_COLUMNS = ("q", "p", "U", "valid")
COMPARE_COLUMNS = ("q", "p_market", "p_white", "U_market", "U_white", "valid_market", "valid_white")
CURVE_COLUMNS = ("tau", "width", "q_minus", "q_plus")


def load_schema(name: str = "analysis_report") -> dict:
    text = resources.files("bohmscale").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def tool_info() -> dict:
    return {"name": "bohmscale", "version": __version__, "numpy": np.__version__}


def timestamp() -> str:
    return dt.datetime.now(dt.timezone.utc).replace(microsecond=0).isoformat()


def _cell(x) -> str:
    return "" if not np.isfinite(x) else repr(float(x))


def write_scale_grid(path, result) -> None:
    rows = (
        (repr(float(q)), repr(float(p)), _cell(u), int(v))
        for q, p, u, v in zip(result.density.q, result.density.p, result.potential.U, result.potential.valid)
    )
    atomic_write_csv(path, GRID_COLUMNS, rows)


def write_compare_grid(path, comparison) -> None:
    m, w = comparison.market, comparison.white
    rows = (
        (repr(float(q)), repr(float(pm)), repr(float(pw)), _cell(um), _cell(uw), int(vm), int(vw))
        for q, pm, pw, um, uw, vm, vw in zip(
            m.density.q, m.density.p, w.density.p, m.potential.U, w.potential.U, m.potential.valid, w.potential.valid
        )
    )
    atomic_write_csv(path, COMPARE_COLUMNS, rows)


def write_width_curve(path, curve) -> None:
    rows = ((r.tau, repr(float(r.width)), repr(float(r.walls.q_minus)), repr(float(r.walls.q_plus))) for r in curve.records)
    atomic_write_csv(path, CURVE_COLUMNS, rows)


def scale_record(result, grid_path=None) -> dict:
    return {
        "tau": result.tau,
        "n_returns": result.n_returns,
        "bandwidth": result.density.bandwidth,
        "grid_spacing": result.density.spacing,
        "density_integral": result.density.integral(),
        "walls": result.walls.to_dict(),
        "width": result.width,
        "grid_path": None if grid_path is None else str(grid_path),
    }


def input_record(path, series, format_spec) -> dict:
    return {
        "path": str(path),
        "sha256": file_sha256(path),
        "n_prices": len(series),
        "n_dropped": series.n_dropped,
        "first_date": str(series.dates[0]),
        "last_date": str(series.dates[-1]),
        "format": format_spec.to_dict(),
    }


def dump_report(report: dict, path: Path) -> str:
    # allow_nan=False enforces the all-finite invariant at write time
    text = json.dumps(report, indent=2, sort_keys=False, allow_nan=False) + "\n"
    atomic_write_text(path, text)
    return text
