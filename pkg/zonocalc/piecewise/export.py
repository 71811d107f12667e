"""JSON and CSV renderings of piecewise polynomials."""
import csv
import io
import json
import logging
from itertools import product
from typing import List, Optional

from sympy import QQ

from ..exactnum.rational import ceil_rat, floor_rat, format_point
from ..geometry.polyhedron import Window
from .functions import PiecewisePoly

logger = logging.getLogger(__name__)


def to_json(f: PiecewisePoly, window: Optional[Window] = None, skip_zero: bool = False) -> dict:
    window = window or f.window
    cells = []
    for cell, piece in f.pieces(window):
        if skip_zero and piece.is_zero():
            continue
        entry = cell.to_json()
        entry["polynomial"] = piece.to_json()
        cells.append(entry)
    return {
        "label": f.label,
        "window": window.to_json(),
        "support": f.support.to_json() if f.support is not None else None,
        "normals": [list(n) for n in f.arrangement.normals],
        "cells": cells,
    }


def _csv_value(value) -> str:
    data = value.to_json()
    return data if isinstance(data, str) else json.dumps(data, sort_keys=True)


def sample_grid(f: PiecewisePoly, resolution: int, window: Optional[Window] = None) -> List[list]:
    """
    Rows (point..., value) on the grid of step 1/resolution strictly inside
    the window; grid points on walls are skipped.
    """
    window = window or f.window
    axes = []
    for lo, hi in zip(window.lower, window.upper):
        start = floor_rat(lo * resolution) + 1
        stop = ceil_rat(hi * resolution)
        axes.append([QQ(k, resolution) for k in range(start, stop)])
    rows = []
    skipped = 0
    for point in product(*axes):
        if not f.arrangement.is_regular(point):
            skipped += 1
            continue
        value = f.piece_near(point).evaluate(point)
        rows.append(format_point(point) + [_csv_value(value)])
    logger.debug(f"sampled {len(rows)} points of {f.label}, skipped {skipped} on walls")
    return rows


def sample_csv(f: PiecewisePoly, resolution: int, window: Optional[Window] = None) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"v{i + 1}" for i in range(f.dim)] + ["value"])
    writer.writerows(sample_grid(f, resolution, window))
    return buffer.getvalue()
