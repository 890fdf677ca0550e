# entrobound_core/output/report_writer.py
"""Deterministic JSON and CSV rendering of command results."""
import csv
import json
import logging
import math
import re
from typing import Any, Dict, List, Optional, Sequence, TextIO

from entrobound_core.config_defs import DEFAULT_FLOAT_DIGITS, DEFAULT_OUTPUT_FORMAT, SCHEMA_VERSION

logger = logging.getLogger("entrobound.output")

OUTPUT_FORMATS = ("json", "csv")

# floats travel through json.dumps as tagged strings and are spliced back in unquoted
_FLOAT_TAG = "\x1ffloat:"
_FLOAT_TOKEN_RE = re.compile(r'"\\u001ffloat:([^"]*)"')


def format_float(value: float, digits: int = DEFAULT_FLOAT_DIGITS) -> Optional[str]:
    """Fixed significant-digit rendering; None for nan and infinities."""
    if not math.isfinite(value):
        return None
    return format(value, f".{digits}g")


class ReportWriter:
    def __init__(self, output_format: str = DEFAULT_OUTPUT_FORMAT, float_digits: int = DEFAULT_FLOAT_DIGITS):
        output_format = output_format.strip().lower()
        if output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format '{output_format}' (known: {', '.join(OUTPUT_FORMATS)})")
        if not 1 <= float_digits <= 17:
            raise ValueError(f"float_digits must lie in [1, 17], got {float_digits}")
        self.output_format = output_format
        self.float_digits = float_digits

    def _tag_floats(self, value: Any) -> Any:
        if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
            return value
        if isinstance(value, float):
            text = format_float(value, self.float_digits)
            return None if text is None else _FLOAT_TAG + text
        if isinstance(value, dict):
            return {str(key): self._tag_floats(item) for key, item in value.items()}
        if isinstance(value, (list, tuple)):
            return [self._tag_floats(item) for item in value]
        # numpy scalars and anything else with a float value
        return self._tag_floats(float(value))

    def render_json(self, command: str, config: Dict[str, Any], rows: Sequence[Dict[str, Any]]) -> str:
        document = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config": config,
            "rows": list(rows),
        }
        text = json.dumps(self._tag_floats(document), indent=2, ensure_ascii=True)
        return _FLOAT_TOKEN_RE.sub(r"\1", text) + "\n"

    def _csv_cell(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return format_float(value, self.float_digits) or ""
        if isinstance(value, (dict, list, tuple)):
            compact = json.dumps(self._tag_floats(value), separators=(",", ":"), ensure_ascii=True)
            return _FLOAT_TOKEN_RE.sub(r"\1", compact)
        return str(value)

    def write_csv(self, columns: Sequence[str], rows: Sequence[Dict[str, Any]], stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([self._csv_cell(row.get(column)) for column in columns])

    def write(
        self,
        command: str,
        config: Dict[str, Any],
        rows: List[Dict[str, Any]],
        stream: TextIO,
        columns: Optional[Sequence[str]] = None,
    ) -> None:
        if self.output_format == "csv":
            if columns is None:
                raise ValueError(f"command '{command}' has no CSV layout")
            self.write_csv(columns, rows, stream)
        else:
            stream.write(self.render_json(command, config, rows))
        stream.flush()
        logger.debug(f"wrote {len(rows)} {self.output_format} row(s) for '{command}'")
