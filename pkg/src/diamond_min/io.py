"""CSV and JSON-lines emission for sweep tables.

Numbers are written with 17 significant digits through Python's own float
formatting, so the output is locale independent and round-trips exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np


@dataclass
class Table:
    columns: list
    rows: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if self.rows.size == 0:
            self.rows = self.rows.reshape(0, len(self.columns))
        if self.rows.shape[1] != len(self.columns):
            raise ValueError(f"{len(self.columns)} columns but rows have {self.rows.shape[1]}")
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("table holds non-finite values")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _meta_lines(meta: dict) -> list[str]:
    lines = []
    for key, value in meta.items():
        if isinstance(value, str):
            lines.append(f"# {key}: {value}")
        else:
            lines.append(f"# {key}: {json.dumps(value, sort_keys=True)}")
    return lines


def write_csv(table: Table, out: TextIO) -> None:
    for line in _meta_lines(table.meta):
        out.write(line + "\n")
    out.write("# order: row-major, last column before the observable varies fastest\n")
    out.write(",".join(table.columns) + "\n")
    for row in table.rows:
        out.write(",".join(fmt(v) for v in row) + "\n")


def write_jsonl(table: Table, out: TextIO) -> None:
    """Header object first, then one object per row keyed by column name."""
    header = {"columns": list(table.columns), "meta": table.meta, "order": "row-major"}
    out.write(json.dumps(header, sort_keys=True) + "\n")
    for row in table.rows:
        # repr of a float is the shortest exact round-trip form
        out.write(json.dumps(dict(zip(table.columns, (float(v) for v in row)))) + "\n")


def write_table(table: Table, out: TextIO, fmt_name: str = "csv") -> None:
    if fmt_name == "csv":
        write_csv(table, out)
    elif fmt_name == "jsonl":
        write_jsonl(table, out)
    else:
        raise ValueError(f"unknown format {fmt_name!r}; use csv or jsonl")


def read_csv(text: str) -> Table:
    """Parse what :func:`write_csv` produced (comment metadata is kept as strings)."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(": ")
            meta[key] = value
        elif line.strip():
            body.append(line)
    columns = body[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in body[1:]]
    return Table(columns, np.array(rows).reshape(len(rows), len(columns)), meta)
