"""
Formatos de salida: JSON versionado, tablas CSV/JSON/texto, digests y esquemas

Los enteros que pueden crecer se serializan como texto decimal. Todos los
documentos JSON llevan "schema": 1.
"""

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import pandas as pd
from rich.console import Console
from rich.table import Table

from .validators import FormatError

SCHEMA_VERSION = 1
TABLE_FORMATS = ("csv", "json", "text")

_DECIMAL = {"type": "string", "pattern": "^[0-9]+$"}
_OPTIONAL_DECIMAL = {"anyOf": [_DECIMAL, {"type": "null"}]}

VIOLATION_SCHEMA = {
    "type": "object",
    "required": ["kind", "indices", "vectors"],
    "properties": {
        "kind": {"type": "string"},
        "indices": {"type": "array", "items": _DECIMAL},
        "vectors": {"type": "array", "items": {"type": "string"}},
    },
}

SCAN_REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "status", "kind", "violation", "tuples_checked"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "status": {"enum": ["ok", "violation", "budget-exceeded"]},
        "kind": {"type": "string"},
        "violation": {"anyOf": [VIOLATION_SCHEMA, {"type": "null"}]},
        "tuples_checked": _DECIMAL,
    },
}

SEARCH_RESULT_SCHEMA = {
    "type": "object",
    "required": ["schema", "quantity", "n", "q", "optimum", "status", "nodes_expanded", "label", "witness"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "quantity": {"type": "string"},
        "n": _DECIMAL,
        "q": _DECIMAL,
        "k": _OPTIONAL_DECIMAL,
        "optimum": _DECIMAL,
        "status": {"enum": ["proven-optimal", "budget-exhausted"]},
        "nodes_expanded": _DECIMAL,
        "root_bound": _OPTIONAL_DECIMAL,
        "label": {"const": "derived"},
        "witness": {"type": "array", "items": {"type": "string"}},
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["schema", "certificate", "size", "passed", "clauses", "rank", "matrix_digest"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "certificate": {"type": "string"},
        "size": _DECIMAL,
        "passed": {"type": "boolean"},
        "clauses": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["clause", "passed", "counterexample"],
                "properties": {
                    "clause": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "counterexample": {"anyOf": [{"type": "array", "items": _DECIMAL}, {"type": "null"}]},
                },
            },
        },
        "rank": _OPTIONAL_DECIMAL,
        "matrix_digest": {"anyOf": [{"type": "string", "pattern": "^[0-9a-f]{64}$"}, {"type": "null"}]},
    },
}

MANIFEST_SCHEMA = {
    "type": "object",
    "required": ["schema", "command", "parameters", "version", "outputs"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"type": "array", "items": {"type": "string"}},
        "parameters": {"type": "object"},
        "version": {"type": "string"},
        "outputs": {
            "type": "object",
            "additionalProperties": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        },
    },
}


def dumps_json(document: Any) -> str:
    """JSON canónico: claves ordenadas, indentación 2, salto de línea final"""
    return json.dumps(document, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def table_frame(rows: Iterable[Dict[str, str]], columns: Sequence[str]) -> pd.DataFrame:
    """DataFrame con todas las celdas como texto y columnas en orden fijo"""
    return pd.DataFrame(list(rows), columns=list(columns), dtype=str).fillna("")


def render_table(rows: List[Dict[str, str]], columns: Sequence[str], fmt: str, title: str = "") -> str:
    """
    Renderiza filas de texto

    Args:
        rows: Filas (dict columna -> texto)
        columns: Orden de columnas
        fmt: csv, json o text
        title: Título de la tabla en formato text

    Returns:
        Texto renderizado
    """
    if fmt not in TABLE_FORMATS:
        raise FormatError(f"Formato desconocido: {fmt}", field="format")
    if fmt == "csv":
        return table_frame(rows, columns).to_csv(index=False, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    if fmt == "json":
        return dumps_json({"schema": SCHEMA_VERSION, "rows": [{c: r.get(c, "") for c in columns} for r in rows]})

    table = Table(title=title or None)
    for column in columns:
        table.add_column(column, justify="right" if column in ("n", "q", "k", "value") else "left")
    for row in rows:
        table.add_row(*(row.get(c, "") for c in columns))
    buffer = io.StringIO()
    Console(file=buffer, width=200, color_system=None).print(table)
    return buffer.getvalue()
