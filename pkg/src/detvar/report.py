"""Rendering of command results as text, CSV or JSON.

JSON output is deterministic: keys are sorted and nothing time-dependent is
written. Integers beyond 2**53 - 1 in magnitude are written as decimal
strings so consumers parsing JSON numbers as doubles do not lose digits.
"""

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import MalformedInputError

MAX_SAFE_INT = 2**53 - 1
FORMATS = ("text", "csv", "json")


def encode_int(value):
    return value if abs(value) <= MAX_SAFE_INT else str(value)


def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return encode_int(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj):
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass
class Report:
    command: str
    payload: dict
    text: list = field(default_factory=list)
    header: list | None = None
    rows: list = field(default_factory=list)
    failed: bool = False


def emit_report(report, fmt):
    """Serialise ``report`` and return UTF-8 bytes."""
    if fmt == "json":
        body = dict(report.payload)
        body.setdefault("command", report.command)
        return dumps(body).encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if report.header is not None:
            writer.writerow(report.header)
        writer.writerows(report.rows)
        return buf.getvalue().encode("utf-8")
    if fmt == "text":
        return ("\n".join(report.text) + "\n").encode("utf-8")
    raise MalformedInputError(f"unsupported format {fmt!r}; choose from {', '.join(FORMATS)}")
