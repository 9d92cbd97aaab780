"""Deterministic CSV emission and parsing.

One schema for every artifact: a header row, comma-separated fields, LF line
endings, reals printed with 17 significant digits (lossless for doubles, so
re-reading reproduces the exact float), integers and names verbatim.  Output
bytes are a pure function of the row data.
"""

from __future__ import annotations

import os

__all__ = ["format_value", "write_csv", "read_csv"]


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    text = str(value)
    if any(c in text for c in ",\n\r"):
        raise ValueError(f"field value may not contain separators: {text!r}")
    return text


def write_csv(path: str, header: list[str], rows: list[tuple]) -> None:
    for name in header:
        if any(c in name for c in ",\n\r"):
            raise ValueError(f"header name may not contain separators: {name!r}")
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(
                f"row width {len(row)} does not match header width {len(header)}"
            )
        lines.append(",".join(format_value(v) for v in row))
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, "r", encoding="ascii", newline="\n") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise ValueError(f"{path}: row {i + 1} width does not match header")
    return header, rows
