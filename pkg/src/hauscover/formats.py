"""Distance-matrix text files, interval JSON files, CSV rows."""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .intervals import IntervalStructureError, IntervalUnion, normalize
from .results import encode_float


class MalformedInputError(ValueError):
    def __init__(self, path, line, message):
        self.path, self.line = str(path), line
        where = f"{path}:{line}" if line else str(path)
        super().__init__(f"{where}: {message}")


def parse_matrix(text: str, path="<string>") -> np.ndarray:
    """First line ``n``, then n rows of n reals; ``#`` starts a comment line."""
    rows = []
    n = None
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise MalformedInputError(path, lineno, f"expected the point count, got {line!r}") from None
            if n < 1:
                raise MalformedInputError(path, lineno, "point count must be positive")
            continue
        if len(rows) == n:
            raise MalformedInputError(path, lineno, f"more than {n} rows")
        try:
            row = [float(x) for x in line.split()]
        except ValueError:
            raise MalformedInputError(path, lineno, "row has a non-numeric entry") from None
        if len(row) != n:
            raise MalformedInputError(path, lineno, f"row has {len(row)} entries, expected {n}")
        if not all(math.isfinite(x) for x in row):
            raise MalformedInputError(path, lineno, "row has a non-finite entry")
        rows.append(row)
    if n is None:
        raise MalformedInputError(path, 0, "empty matrix file")
    if len(rows) != n:
        raise MalformedInputError(path, last, f"expected {n} rows, found {len(rows)}")
    return np.array(rows, dtype=float)


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return parse_matrix(fh.read(), path)


def format_matrix(d: np.ndarray) -> str:
    lines = [str(d.shape[0])]
    lines.extend(" ".join(repr(float(x)) for x in row) for row in d)
    return "\n".join(lines) + "\n"


def parse_intervals(text: str, path="<string>") -> IntervalUnion:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(path, exc.lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or not isinstance(data.get("intervals"), list):
        raise MalformedInputError(path, 1, "expected an object with an 'intervals' list")
    try:
        return normalize(data["intervals"])
    except (IntervalStructureError, TypeError, ValueError) as exc:
        raise MalformedInputError(path, 0, str(exc)) from None


def read_intervals(path) -> IntervalUnion:
    with open(path) as fh:
        return parse_intervals(fh.read(), path)


def format_intervals(U: IntervalUnion) -> str:
    return json.dumps({"intervals": U.as_list()}) + "\n"


def parse_values(text: str, path="<string>") -> list:
    """Reals separated by whitespace or commas (or a JSON list)."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            return [float(x) for x in json.loads(stripped)]
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise MalformedInputError(path, 1, f"bad value list: {exc}") from None
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ")
        try:
            out.extend(float(x) for x in line.split())
        except ValueError:
            raise MalformedInputError(path, lineno, "non-numeric value") from None
    return out


CSV_FIELDS = ("alpha", "eps", "delta", "value", "attained", "method", "elapsed_ms")


def format_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: _csv_cell(row.get(k)) for k in CSV_FIELDS})
    return buf.getvalue()


def _csv_cell(v):
    if v is None:
        return ""
    v = encode_float(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else v


def dumps(obj) -> str:
    """Deterministic JSON (sorted keys, inf as the string ``"inf"``)."""
    return json.dumps(_encode(obj), indent=2, sort_keys=True) + "\n"


def _encode(obj):
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        obj = obj.item()
    return encode_float(obj)
