"""Serialization: the JSON code format, alist parity checks, report dumps.

The JSON code document is {"n": int, "hx": [[...]], "hz": [[...]], "meta": {}}
with every support sorted ascending. Writing is canonical (sorted keys, fixed
separators, trailing newline) so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import FormatError
from .f2 import SparseBitMatrix
from .model import CssCode


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def code_to_dict(code: CssCode) -> dict:
    return {
        "n": code.n,
        "hx": [list(s) for s in code.x_stabs.row_supports],
        "hz": [list(s) for s in code.z_stabs.row_supports],
        "meta": code.meta,
    }


def dumps_code(code: CssCode) -> str:
    return canonical_json(code_to_dict(code))


def code_from_dict(doc: dict) -> CssCode:
    if not isinstance(doc, dict):
        raise FormatError("code document must be a JSON object")
    for key in ("n", "hx", "hz"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise FormatError("'n' must be a non-negative integer")
    for key in ("hx", "hz"):
        rows = doc[key]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise FormatError(f"{key!r} must be a list of index lists")
        for r in rows:
            if not all(isinstance(i, int) for i in r):
                raise FormatError(f"{key!r} contains a non-integer index")
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise FormatError("'meta' must be an object")
    # constructor enforces sortedness and range
    return CssCode(
        n,
        SparseBitMatrix(len(doc["hx"]), n, tuple(tuple(r) for r in doc["hx"])),
        SparseBitMatrix(len(doc["hz"]), n, tuple(tuple(r) for r in doc["hz"])),
        meta,
    )


def loads_code(text: str) -> CssCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return code_from_dict(doc)


def read_code(path: str) -> CssCode:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_code(fh.read())


def write_code(path: str, code: CssCode) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_code(code))


# --- alist ------------------------------------------------------------------


def read_alist(text: str) -> SparseBitMatrix:
    """Parse the alist parity-check format into a checks-by-columns matrix.

    Layout: "N M", "max_col_w max_row_w", N column weights, M row weights,
    N column lines then M row lines of 1-based indices (0 = padding).
    """
    tokens_by_line = [line.split() for line in text.splitlines() if line.strip()]
    if len(tokens_by_line) < 4:
        raise FormatError("alist: too few lines")
    try:
        n, m = (int(t) for t in tokens_by_line[0])
    except (ValueError, TypeError) as exc:
        raise FormatError("alist: bad first line") from exc
    if len(tokens_by_line) < 4 + n + m:
        raise FormatError(f"alist: expected {4 + n + m} lines, got {len(tokens_by_line)}")
    row_lines = tokens_by_line[4 + n : 4 + n + m]
    rows = []
    for line in row_lines:
        try:
            idx = [int(t) for t in line]
        except ValueError as exc:
            raise FormatError("alist: non-integer index") from exc
        support = sorted({i - 1 for i in idx if i > 0})
        if support and (support[0] < 0 or support[-1] >= n):
            raise FormatError("alist: index out of range")
        rows.append(tuple(support))
    return SparseBitMatrix(m, n, tuple(rows))


def code_from_alist(text: str) -> CssCode:
    """Classical parity checks load as an X-only code (no Z rows)."""
    hx = read_alist(text)
    return CssCode(hx.cols, hx, SparseBitMatrix.zeros(0, hx.cols), {"source": "alist"})
