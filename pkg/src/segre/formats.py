"""JSON / CSV / text encoders for command results.

JSON keys are the lower_snake_case field names of the dataclasses. Rationals
become ``{"num": n, "den": d}`` and enums become their string value. CSV
cells render rationals as ``n/d``, booleans as ``true``/``false`` and lists
as space-separated values.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import os
import tempfile
from fractions import Fraction
from typing import Any, Sequence


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def from_json_rational(value: Any) -> Any:
    if isinstance(value, dict) and set(value) == {"num", "den"}:
        return Fraction(value["num"], value["den"])
    return value


def dumps_json(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), indent=2, ensure_ascii=False) + "\n"


def cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, (list, tuple)):
        return " ".join(cell(v) for v in value)
    return str(value)


def dumps_csv(columns: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([cell(row.get(c)) for c in columns])
    return buf.getvalue()


def dumps_text(title: str, header: dict, columns: Sequence[str], rows: Sequence[dict]) -> str:
    lines = [title]
    for key, value in header.items():
        lines.append(f"  {key}: {cell(value)}")
    if columns:
        table = [list(columns)] + [[cell(row.get(c)) for c in columns] for row in rows]
        widths = [max(len(r[j]) for r in table) for j in range(len(columns))]
        for r in table:
            lines.append("  " + "  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".segre-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
