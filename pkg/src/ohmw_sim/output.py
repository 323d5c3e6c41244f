"""Result serialization: JSON documents and RFC-4180 CSV tables.

JSON documents carry a schema version, an input echo and the outputs, with
floats written at 17 significant digits so values round-trip exactly.  CSV
tables use one row per record with unit-suffixed column names.
"""

from __future__ import annotations

import csv
import io
import math
import sys

from .errors import ConfigError

SCHEMA_VERSION = 1


def format_float(x: float) -> str:
    """17 significant digits; enough for exact binary64 round trips."""
    if math.isnan(x) or math.isinf(x):
        return "null"
    return f"{x:.17g}"


def _serialize(obj, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        # json string escaping without touching numeric formatting
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad_in}"{key}": {_serialize(value, indent, level + 1)}'
            for key, value in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        items = [f"{pad_in}{_serialize(value, indent, level + 1)}" for value in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise ConfigError(f"cannot serialize {type(obj).__name__} to JSON")


def dumps_json(obj, indent: int = 2) -> str:
    return _serialize(obj, indent, 0) + "\n"


def json_document(scenario: str, inputs: dict, outputs: dict, seed: int | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario,
        "inputs": inputs,
        "outputs": outputs,
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def csv_table(rows: list[dict]) -> str:
    """RFC-4180 CSV (CRLF line endings) from uniform row dictionaries."""
    if not rows:
        raise ConfigError("no rows to write")
    header = list(rows[0].keys())
    for row in rows:
        if list(row.keys()) != header:
            raise ConfigError("CSV rows must share one header")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, float) else v for v in row.values()]
        )
    return buf.getvalue()


def emit_results(
    scenario: str,
    inputs: dict,
    outputs: dict,
    rows: list[dict],
    fmt: str,
    path: str | None,
    seed: int | None = None,
) -> None:
    """Write results as JSON (single document) or CSV (+ JSON summary sidecar).

    An empty or missing ``path`` writes to stdout.  In CSV mode the scalar
    outputs go to ``<path>.summary.json`` when a path is given.
    """
    if fmt == "json":
        doc = json_document(scenario, inputs, dict(outputs, rows=rows), seed)
        text = dumps_json(doc)
        if path:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    if fmt != "csv":
        raise ConfigError(f"unknown output format '{fmt}'")
    table = csv_table(rows)
    summary = dumps_json(json_document(scenario, inputs, outputs, seed))
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(table)
        with open(path + ".summary.json", "w", newline="") as fh:
            fh.write(summary)
    else:
        sys.stdout.write(table)
        sys.stderr.write(summary)
