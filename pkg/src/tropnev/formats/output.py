"""
CSV and JSON writers for result tables.

CSV output starts with ``# key=value`` metadata lines followed by a header row. Numbers print
exactly (integers without a trailing ``.0``) and the tropical zero prints as ``-inf``.
"""

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

import numpy as np

from ..core.exceptions import ValidationError
from ..maxplus.semiring import BOTTOM_LITERAL
from ..utils.logger import get_logger
from .expr import format_number

logger = get_logger(__name__)

FORMATS = ("csv", "json")


def format_cell(value: Any) -> str:
    """Text for one CSV cell."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_number(float(value))
    if value is None:
        return ""
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Plain JSON types; -inf becomes the string ``"-inf"``."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if x == -math.inf:
            return BOTTOM_LITERAL
        return x
    return value


def render_csv(
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    metadata: Optional[Dict[str, Any]] = None,
) -> str:
    buffer = io.StringIO()
    for key, value in sorted((metadata or {}).items()):
        buffer.write(f"# {key}={format_cell(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def render_json(payload: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n"


def render(
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    fmt: str = "csv",
    metadata: Optional[Dict[str, Any]] = None,
    summary: Optional[Dict[str, Any]] = None,
) -> str:
    """One table (and an optional summary) in the requested format."""
    if fmt == "csv":
        meta = dict(metadata or {})
        for key, value in (summary or {}).items():
            if not isinstance(value, (dict, list, tuple)):
                meta[key] = value
        return render_csv(header, rows, meta)
    if fmt == "json":
        payload: Dict[str, Any] = {
            "metadata": metadata or {},
            "header": list(header),
            "rows": [list(r) for r in rows],
        }
        if summary:
            payload["summary"] = summary
        return render_json(payload)
    raise ValidationError(f"Output format must be one of {FORMATS}, got {fmt!r}")


def write_output(
    text: str, out: Optional[Union[str, Path]] = None, stream: Optional[TextIO] = None
) -> None:
    """Write to ``out`` when given, else to the stream (stdout by default)."""
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(text)} bytes to {path}")
        return
    (stream or sys.stdout).write(text)


def read_csv_table(text: str) -> List[Dict[str, str]]:
    """Rows of a CSV produced by :func:`render_csv`, skipping metadata lines."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(lines))
