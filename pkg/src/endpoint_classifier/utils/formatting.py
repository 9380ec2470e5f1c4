"""Output formatting utilities for classification reports.

This module renders reports as JSON, CSV and plain text. Table and CSV floats are
written with 17 significant digits; JSON uses the shortest round-trip representation.

Examples:
    >>> from endpoint_classifier.utils.formatting import format_float
    >>> format_float(0.1)
    '0.10000000000000001'
"""

import csv
import io
import json
import math
from collections.abc import Mapping, Sequence
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import BaseModel

FLOAT_FORMAT = ".17g"


def format_float(value: float) -> str:
    """Format a float with 17 significant digits.

    Args:
        value: Number to format.

    Returns:
        Round-trip exact representation; ``inf``, ``-inf`` and ``nan`` as words.

    Examples:
        >>> format_float(1e-12)
        '9.9999999999999998e-13'
    """
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, FLOAT_FORMAT)


def format_cell(value: Any) -> str:
    """Format a single table or CSV cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, list | tuple):
        return ";".join(format_cell(v) for v in value)
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Convert reports, fractions and numpy scalars to JSON-compatible values.

    Non-finite floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"`` since
    strict JSON has no literal for them.
    """
    if isinstance(value, BaseModel):
        to_report = getattr(value, "to_report", None)
        return to_jsonable(to_report() if callable(to_report) else value.model_dump())
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, int | str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else format_float(value)
    item = getattr(value, "item", None)
    if callable(item):
        return to_jsonable(item())
    return str(value)


def dumps_report(report: Any, indent: int | None = 2) -> str:
    """Serialize a report to JSON with sorted keys.

    Floats use the shortest representation that reads back to the same double.

    Args:
        report: Mapping, pydantic model or list of them.
        indent: JSON indentation level.

    Returns:
        JSON text; identical inputs give byte-identical output.
    """
    data = to_jsonable(report)
    return json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False)


def export_to_json(
    report: Any,
    output_path: str | Path,
    indent: int = 2,
    include_metadata: bool = False,
) -> None:
    """Export a report to a JSON file.

    Args:
        report: Report mapping or model.
        output_path: Path to save JSON file.
        indent: JSON indentation level.
        include_metadata: Whether to wrap the report with an export timestamp. Reports
            written with metadata are no longer byte-reproducible.

    Examples:
        >>> export_to_json({"kind": "LimitPoint"}, "./outputs/report.json")  # doctest: +SKIP
    """
    output_file = Path(output_path)
    output_file.parent.mkdir(parents=True, exist_ok=True)

    payload: Any = report
    if include_metadata:
        payload = {
            "metadata": {"exported_at": datetime.now(timezone.utc).isoformat()},  # noqa: UP017
            "report": report,
        }

    output_file.write_text(dumps_report(payload, indent=indent) + "\n", encoding="utf-8")


def format_csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Render rows as CSV text with ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])
    return buffer.getvalue()


def write_csv(
    headers: Sequence[str], rows: Sequence[Sequence[Any]], output_path: str | Path
) -> None:
    """Write rows to a CSV file, creating parent directories."""
    output_file = Path(output_path)
    output_file.parent.mkdir(parents=True, exist_ok=True)
    output_file.write_text(format_csv(headers, rows), encoding="utf-8")


def format_table(
    headers: Sequence[str], rows: Sequence[Sequence[Any]], markdown: bool = True
) -> str:
    """Format data as a table.

    Args:
        headers: Column headers.
        rows: List of row data.
        markdown: Whether to use markdown format (vs. plain text).

    Returns:
        Formatted table string.

    Examples:
        >>> print(format_table(["n", "alpha_star"], [[2, 1.0]], markdown=False))
        n alpha_star
        ------------
        2 1
    """
    if not rows:
        return "No data available."

    cells = [[format_cell(cell) for cell in row] for row in rows]
    col_widths = [len(h) for h in headers]
    for row in cells:
        for i, cell in enumerate(row):
            col_widths[i] = max(col_widths[i], len(cell))

    lines = []
    if markdown:
        lines.append("| " + " | ".join(h.ljust(w) for h, w in zip(headers, col_widths)) + " |")
        lines.append("|" + "|".join("-" * (w + 2) for w in col_widths) + "|")
        for row in cells:
            lines.append("| " + " | ".join(c.ljust(w) for c, w in zip(row, col_widths)) + " |")
        return "\n".join(lines)

    header_line = " ".join(h.ljust(col_widths[i]) for i, h in enumerate(headers)).rstrip()
    lines.append(header_line)
    lines.append("-" * len(header_line))
    for row in cells:
        lines.append(" ".join(c.ljust(col_widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines)


def format_key_value_pairs(
    data: Mapping[str, Any], indent: int = 0, separator: str = ": "
) -> str:
    """Format a nested report as indented key-value pairs.

    Examples:
        >>> print(format_key_value_pairs({"kind": "LimitCircle", "N": 1}))
        kind: LimitCircle
        N: 1
    """
    indent_str = "  " * indent
    lines = []

    for key, value in data.items():
        if isinstance(value, Mapping):
            lines.append(f"{indent_str}{key}:")
            lines.append(format_key_value_pairs(value, indent + 1, separator))
        elif isinstance(value, list) and any(isinstance(item, Mapping) for item in value):
            lines.append(f"{indent_str}{key}:")
            for item in value:
                if isinstance(item, Mapping):
                    lines.append(format_key_value_pairs(item, indent + 1, separator))
                else:
                    lines.append(f"{indent_str}  - {format_cell(item)}")
        else:
            lines.append(f"{indent_str}{key}{separator}{format_cell(value)}")

    return "\n".join(lines)


def format_duration(seconds: float) -> str:
    """Format duration in human-readable format.

    Examples:
        >>> format_duration(3665)
        '1h 1m 5s'
    """
    if seconds < 60:
        return f"{seconds:.1f}s"

    if seconds < 3600:
        minutes = int(seconds // 60)
        secs = int(seconds % 60)
        return f"{minutes}m {secs}s"

    hours = int(seconds // 3600)
    minutes = int((seconds % 3600) // 60)
    secs = int(seconds % 60)
    return f"{hours}h {minutes}m {secs}s"
