"""Reading and writing spaces as JSON or CSV.

JSON: ``{"labels": [...], "distances": [[...], ...]}``.
CSV: the first row holds the labels, then the full ``n x n`` matrix.

Numbers are written as integers when integral and otherwise with ``repr``,
so that reading back a written file reproduces the matrix bit for bit.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .errors import InvalidInput, ShapeMismatch
from .space import FiniteMetricSpace, validate

PathLike = Union[str, Path]
FORMATS = ("json", "csv")


def format_number(v: float) -> str:
    v = float(v)
    if v.is_integer() and abs(v) < 2 ** 53:
        return str(int(v))
    return repr(v)


def _json_number(v: float):
    v = float(v)
    return int(v) if v.is_integer() and abs(v) < 2 ** 53 else v


def detect_format(path: PathLike, fmt: Optional[str] = None) -> str:
    if fmt:
        if fmt not in FORMATS:
            raise InvalidInput(f"unknown format {fmt!r}")
        return fmt
    suffix = Path(path).suffix.lower().lstrip(".")
    return suffix if suffix in FORMATS else "json"


def dumps(X: FiniteMetricSpace, fmt: str = "json") -> str:
    if fmt == "json":
        payload = {"labels": list(X.labels), "distances": [[_json_number(v) for v in row] for row in X.dist]}
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(X.labels)
        for row in X.dist:
            w.writerow([format_number(v) for v in row])
        return buf.getvalue()
    raise InvalidInput(f"unknown format {fmt!r}")


def _parse_number(tok) -> float:
    if isinstance(tok, bool):
        raise InvalidInput(f"not a number: {tok!r}")
    if isinstance(tok, (int, float)):
        return float(tok)
    text = str(tok).strip()
    if "," in text:
        raise InvalidInput(f"thousands separators are not allowed: {text!r}")
    try:
        return float(text)
    except ValueError:
        raise InvalidInput(f"not a number: {text!r}") from None


def parse(text: str, fmt: str = "json") -> Tuple[List[str], List[List[float]]]:
    """Raw labels and matrix rows, before any metric validation."""
    if fmt == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"malformed JSON: {exc}") from None
        if not isinstance(obj, dict) or "distances" not in obj:
            raise InvalidInput('expected an object with "labels" and "distances"')
        rows = obj["distances"]
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise ShapeMismatch('"distances" must be a list of rows')
        labels = obj.get("labels")
        if labels is None:
            labels = [f"x{i + 1}" for i in range(len(rows))]
        if not isinstance(labels, list):
            raise InvalidInput('"labels" must be a list of strings')
        return [str(s) for s in labels], [[_parse_number(v) for v in r] for r in rows]
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        lines = [row for row in reader if row and any(c.strip() for c in row)]
        if not lines:
            raise InvalidInput("empty CSV file")
        labels = [c.strip() for c in lines[0]]
        return labels, [[_parse_number(c) for c in row] for row in lines[1:]]
    raise InvalidInput(f"unknown format {fmt!r}")


def _matrix(rows: List[List[float]]):
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeMismatch(f"distance matrix is not square ({n} rows, row lengths {sorted({len(r) for r in rows})})")
    return rows


def loads(text: str, fmt: str = "json") -> FiniteMetricSpace:
    labels, rows = parse(text, fmt)
    return validate(_matrix(rows), labels)


def read_space(path: PathLike, fmt: Optional[str] = None) -> FiniteMetricSpace:
    return loads(Path(path).read_text(), detect_format(path, fmt))


def write_space(X: FiniteMetricSpace, path: PathLike, fmt: Optional[str] = None) -> None:
    Path(path).write_text(dumps(X, detect_format(path, fmt)))


def file_digest(path: PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
