"""CSV / JSON / PPM writers and the matching readers used for round trips.

Floats are written with ``repr``, the shortest string that parses back to
the identical double, so every payload round-trips bit for bit.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Mapping, Sequence

import numpy as np

from .scan import RegionGrid


def dumps_json(payload: Mapping[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def csv_text(rows: Sequence[Sequence[Any]], header: Sequence[str] | None = None, comments: Mapping[str, Any] | None = None) -> str:
    buf = io.StringIO()
    for key in sorted(comments or {}):
        buf.write(f"# {key}={comments[key]}\n")
    writer = csv.writer(buf, lineterminator="\n")
    if header is not None:
        writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def matrix_csv(m: np.ndarray, header: Sequence[str] | None = None) -> str:
    return csv_text(np.asarray(m).tolist(), header)


def read_csv(text: str) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Split CSV text into (comment metadata, header, rows)."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            meta[key] = value
        elif line:
            body.append(line)
    rows = list(csv.reader(body))
    return meta, rows[0] if rows else [], rows[1:]


def grid_metadata(grid: RegionGrid) -> dict[str, Any]:
    meta = {
        "axis1": f"{grid.axis1.name}:{grid.axis1.start!r}:{grid.axis1.stop!r}:{grid.axis1.num}",
        "axis2": f"{grid.axis2.name}:{grid.axis2.start!r}:{grid.axis2.stop!r}:{grid.axis2.num}",
    }
    if grid.plan is not None:
        for k, v in sorted(grid.plan.fixed.items()):
            meta[f"fixed.{k}"] = repr(float(v))
        meta["task"] = repr(grid.plan.task)
    return meta


def grid_csv(grid: RegionGrid, extra: Mapping[str, Any] | None = None) -> str:
    comments = {**grid_metadata(grid), **(extra or {})}
    header = [grid.axis1.name, grid.axis2.name, "code", *grid.value_names]
    return csv_text(grid.records(), header, comments)


def legend_dict(grid: RegionGrid) -> dict[str, Any]:
    return {
        str(code): {"label": label, "color": list(color)}
        for code, (label, color) in sorted(grid.legend.items())
    }


def grid_json(grid: RegionGrid) -> dict[str, Any]:
    return {
        "axis1": {"name": grid.axis1.name, "values": grid.axis1.values().tolist()},
        "axis2": {"name": grid.axis2.name, "values": grid.axis2.values().tolist()},
        "codes": grid.codes.tolist(),
        "value_names": list(grid.value_names),
        "values": [[[None if np.isnan(v) else float(v) for v in cell] for cell in row] for row in grid.values],
        "legend": legend_dict(grid),
    }


def grid_ppm(grid: RegionGrid) -> bytes:
    """Binary P6 image: axis1 runs left to right, axis2 bottom to top."""
    n1, n2 = grid.codes.shape
    lut = {code: color for code, (_, color) in grid.legend.items()}
    pixels = np.zeros((n2, n1, 3), dtype=np.uint8)
    for code, color in lut.items():
        mask = (grid.codes == code).T[::-1]
        pixels[mask] = color
    return f"P6\n{n1} {n2}\n255\n".encode("ascii") + pixels.tobytes()


def read_ppm(data: bytes) -> np.ndarray:
    magic, dims, maxval, rest = data.split(b"\n", 3)
    if magic != b"P6" or maxval != b"255":
        raise ValueError("not an 8-bit P6 image")
    w, h = map(int, dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(h, w, 3)
