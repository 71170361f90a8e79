"""JSON record files: polygons, seminorm families, map specs and reports."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError
from .geometry import SimplePolygon, validate_simple
from .metric import SeminormFamily
from .selfmap import SelfMapSpec, spec_from_record


def load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def polygon_from_record(rec: Any) -> SimplePolygon:
    if not isinstance(rec, dict) or rec.get("kind") != "polygon" or "vertices" not in rec:
        raise InputError('polygon record must look like {"kind": "polygon", "vertices": [[x, y], ...]}')
    try:
        verts = [(float(x), float(y)) for x, y in rec["vertices"]]
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad vertex list: {exc}") from exc
    return validate_simple(verts)


def read_polygon(path) -> SimplePolygon:
    return polygon_from_record(load_json(path))


def read_seminorms(path) -> SeminormFamily:
    rec = load_json(path)
    if not isinstance(rec, dict):
        raise InputError("seminorm file must hold a JSON object")
    return SeminormFamily.from_record(rec)


def read_map(path) -> SelfMapSpec:
    rec = load_json(path)
    if not isinstance(rec, dict):
        raise InputError("map file must hold a JSON object")
    return spec_from_record(rec)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(record: dict) -> str:
    """Serialize a report; floats use the shortest repr that round-trips exactly."""
    return json.dumps(_plain(record), ensure_ascii=False, allow_nan=False) + "\n"


def write_atomic(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path
