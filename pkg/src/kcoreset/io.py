"""CSV ingestion and the JSON documents for coresets, reports and synth specs.

Documents are UTF-8 JSON with a ``format`` tag and a ``version`` field.
Floats are written with ``repr`` (shortest string that round-trips the
double exactly), so save -> load -> save is byte-identical.
"""
from __future__ import annotations

import csv
import json
import math

import numpy as np

from .coreset import WeightedCoreset
from .metric import Dataset, ValidationError, validate_metric
from .oracle import ErrorReport
from .synth import SynthSpec

VERSION = 1
CORESET_FORMAT = "kcoreset/coreset"
REPORT_FORMAT = "kcoreset/report"


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_numeric_csv(path) -> np.ndarray:
    """Rows of comma-separated decimals; a non-numeric first row is a header."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [(i, r) for i, r in enumerate(csv.reader(fh), start=1) if any(c.strip() for c in r)]
    if rows and not all(_is_number(c) for c in rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    width = len(rows[0][1])
    out = np.empty((len(rows), width))
    for r, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise ValidationError(f"{path}: row {lineno} has {len(row)} fields, expected {width}")
        for c, cell in enumerate(row):
            try:
                v = float(cell)
            except ValueError:
                raise ValidationError(f"{path}: row {lineno} field {c + 1} is not a number: {cell!r}") from None
            if not math.isfinite(v):
                raise ValidationError(f"{path}: row {lineno} field {c + 1} is not finite")
            out[r, c] = v
    return out


def load_points_csv(path) -> Dataset:
    return Dataset.from_points(read_numeric_csv(path))


def save_points_csv(path, points) -> None:
    X = np.atleast_2d(np.asarray(points, dtype=float))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for row in X:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")


def load_distance_matrix(path) -> Dataset:
    D = read_numeric_csv(path)
    validate_metric(D)
    return Dataset.from_matrix(D, validate=False)


def _dump(doc: dict, list_key: str) -> str:
    """JSON with the (long) entry list written one element per line."""
    head = {k: v for k, v in doc.items() if k != list_key}
    lines = ["{"]
    for k, v in head.items():
        lines.append(f" {json.dumps(k)}: {json.dumps(v)},")
    items = doc[list_key]
    lines.append(f" {json.dumps(list_key)}: [")
    for i, item in enumerate(items):
        lines.append("  " + json.dumps(item) + ("," if i + 1 < len(items) else ""))
    lines.append(" ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read_doc(path, fmt: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not a valid document: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != fmt:
        raise ValidationError(f"{path}: expected a {fmt} document")
    if doc.get("version") != VERSION:
        raise ValidationError(f"{path}: unsupported version {doc.get('version')!r}, expected {VERSION}")
    return doc


def coreset_to_text(c: WeightedCoreset) -> str:
    entries = []
    for j in range(c.m):
        e = {"index": int(c.indices[j])}
        if c.points is not None:
            e["coords"] = [float(v) for v in c.points[j]]
        e["weight"] = float(c.weights[j])
        e["q"] = float(c.q[j])
        entries.append(e)
    doc = {"format": CORESET_FORMAT, "version": VERSION, "n": int(c.n), "m": c.m,
           "provenance": c.provenance, "entries": entries}
    return _dump(doc, "entries")


def save_coreset(path, c: WeightedCoreset) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(coreset_to_text(c))


def load_coreset(path) -> WeightedCoreset:
    doc = _read_doc(path, CORESET_FORMAT)
    entries = doc.get("entries") or []
    if not entries:
        raise ValidationError(f"{path}: a coreset needs at least one entry")
    if doc.get("m") != len(entries):
        raise ValidationError(f"{path}: m={doc.get('m')} but {len(entries)} entries")
    try:
        idx = np.array([e["index"] for e in entries], dtype=np.intp)
        w = np.array([e["weight"] for e in entries], dtype=float)
        q = np.array([e["q"] for e in entries], dtype=float)
        has = ["coords" in e for e in entries]
        if any(has) and not all(has):
            raise ValidationError(f"{path}: coords present on some entries only")
        pts = np.array([e["coords"] for e in entries], dtype=float) if all(has) else None
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{path}: malformed entry: {exc}") from exc
    c = WeightedCoreset(indices=idx, weights=w, q=q, n=int(doc["n"]), points=pts,
                        provenance=doc.get("provenance", {}))
    if not c.provenance.get("compacted"):
        c.check()
    return c


def report_to_text(r: ErrorReport) -> str:
    doc = {"format": REPORT_FORMAT, "version": VERSION, "p": r.p, "max_error": r.max_error,
           "mean_error": r.mean_error, "zero_cost": list(r.zero_cost), "meta": r.meta,
           "per_query": [[int(i), float(e)] for i, e in r.per_query]}
    return _dump(doc, "per_query")


def save_report(path, r: ErrorReport) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report_to_text(r))


def load_report(path) -> ErrorReport:
    doc = _read_doc(path, REPORT_FORMAT)
    per = tuple((int(i), float(e)) for i, e in doc["per_query"])
    vals = [e for _, e in per]
    if vals and doc["max_error"] != max(vals):
        raise ValidationError(f"{path}: max_error does not match per-query errors")
    return ErrorReport(per_query=per, max_error=doc["max_error"], mean_error=doc["mean_error"],
                       p=doc["p"], zero_cost=tuple(doc.get("zero_cost", ())), meta=doc.get("meta", {}))


def load_synth_spec(path) -> SynthSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not a valid spec document: {exc}") from exc
    return SynthSpec.from_dict(doc)


def save_synth_spec(path, spec: SynthSpec) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(spec.to_dict(), indent=1) + "\n")
