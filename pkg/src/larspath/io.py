"""File formats: CSV ingestion, knots serialization, experiment configs."""
from __future__ import annotations

import csv
import json
import os
import tempfile

import numpy as np

from .design import StandardizedDesign, destandardize
from .errors import CsvFormatError
from .path import CoefficientPath, PathKnot, cumulative_arc_length

__all__ = [
    "ingest_csv", "atomic_write", "knots_records", "knots_to_json", "knots_to_csv",
    "read_knots_json", "parse_config", "KNOTS_SCHEMA",
]

KNOTS_SCHEMA = "larspath.knots/1"


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def ingest_csv(path, response_column):
    """Read a headed numeric CSV into ``(x, y, column_names)``.

    ``response_column`` is a header name or a zero-based column index.
    Errors carry the 1-based line number of the offending row.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise CsvFormatError(f"{path}: file is empty")
    header = [h.strip() for h in rows[0]]
    if all(_is_number(h) for h in header if h):
        raise CsvFormatError(f"{path}:1: missing header row")
    if isinstance(response_column, str) and response_column in header:
        resp = header.index(response_column)
    else:
        try:
            resp = int(response_column)
        except (TypeError, ValueError):
            raise CsvFormatError(f"{path}:1: unknown response column {response_column!r}")
        if not 0 <= resp < len(header):
            raise CsvFormatError(f"{path}:1: response index {resp} out of range")
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise CsvFormatError(
                f"{path}:{lineno}: expected {len(header)} cells, found {len(row)}")
        parsed = []
        for name, cell in zip(header, row):
            cell = cell.strip()
            if cell == "":
                raise CsvFormatError(f"{path}:{lineno}: missing value in column {name!r}")
            try:
                parsed.append(float(cell))
            except ValueError:
                raise CsvFormatError(
                    f"{path}:{lineno}: non-numeric value {cell!r} in column {name!r}")
        values.append(parsed)
    if not values:
        raise CsvFormatError(f"{path}: no data rows")
    data = np.array(values)
    names = [h for i, h in enumerate(header) if i != resp]
    x = np.delete(data, resp, axis=1)
    return x, data[:, resp], names


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _floats(v):
    return [float(t) for t in np.asarray(v, dtype=float).ravel()]


def knots_records(path: CoefficientPath, design: StandardizedDesign):
    cum = cumulative_arc_length(path)
    records = []
    for knot, s in zip(path.knots, cum):
        rec = {
            "step_index": knot.step_index,
            "event": knot.event,
            "entered": list(knot.entered),
            "dropped": list(knot.dropped),
            "active": list(knot.active),
            "signs": list(knot.signs),
            "max_abs_corr": float(knot.max_abs_corr),
            "gamma": float(knot.gamma),
            "arc_length": float(s),
            "beta": _floats(knot.beta),
        }
        if not design.raw_mode:
            intercept, coef = destandardize(design, knot.beta)
            rec["intercept"] = float(intercept)
            rec["coefficients"] = _floats(coef)
        records.append(rec)
    return records


def knots_to_json(path: CoefficientPath, design: StandardizedDesign, column_names) -> str:
    doc = {
        "schema": KNOTS_SCHEMA,
        "method": path.method,
        "design_fingerprint": path.design_fingerprint,
        "standardized": not design.raw_mode,
        "exhausted": path.exhausted,
        "n": design.n,
        "m": design.m,
        "column_names": list(column_names),
        "y_mean": float(design.y_mean),
        "column_means": _floats(design.column_means),
        "column_scales": _floats(design.column_scales),
        "knots": knots_records(path, design),
    }
    return json.dumps(doc, indent=1) + "\n"


def knots_to_csv(path: CoefficientPath, design: StandardizedDesign, column_names) -> str:
    import io as _io

    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = ["step_index", "event", "entered", "dropped", "active", "max_abs_corr",
            "gamma", "arc_length"] + [f"beta_{c}" for c in column_names]
    if not design.raw_mode:
        head += ["intercept"] + [f"coef_{c}" for c in column_names]
    w.writerow(head)
    for rec in knots_records(path, design):
        row = [rec["step_index"], rec["event"],
               " ".join(map(str, rec["entered"])), " ".join(map(str, rec["dropped"])),
               " ".join(map(str, rec["active"])), repr(rec["max_abs_corr"]),
               repr(rec["gamma"]), repr(rec["arc_length"])]
        row += [repr(v) for v in rec["beta"]]
        if "coefficients" in rec:
            row += [repr(rec["intercept"])] + [repr(v) for v in rec["coefficients"]]
        w.writerow(row)
    return buf.getvalue()


def read_knots_json(text: str) -> CoefficientPath:
    """Rebuild a :class:`CoefficientPath` from :func:`knots_to_json` output."""
    doc = json.loads(text)
    if doc.get("schema") != KNOTS_SCHEMA:
        raise ValueError(f"unsupported knots schema {doc.get('schema')!r}")
    knots = tuple(
        PathKnot(r["step_index"], tuple(r["active"]), tuple(r["signs"]),
                 np.array(r["beta"], dtype=float), r["max_abs_corr"], r["gamma"],
                 r["event"], tuple(r["entered"]), tuple(r["dropped"]))
        for r in doc["knots"])
    return CoefficientPath(doc["method"], knots, doc["design_fingerprint"], doc["exhausted"])


def _parse_value(text):
    text = text.strip()
    if "," in text:
        return tuple(_parse_value(t) for t in text.split(",") if t.strip())
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def parse_config(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, commas make tuples."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        out[key.strip()] = _parse_value(value)
    return out
