"""JSON wire formats.

A matrix is ``{"n": n, "entries": [[[re, im], ...], ...]}`` (row-major). Python
floats serialize through ``repr`` so values round-trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .linalg import as_cmatrix


def matrix_to_json(M) -> dict:
    M = as_cmatrix(M)
    return {
        "n": int(M.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        n = int(obj["n"])
        rows = obj["entries"]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValidationError(f"matrix JSON: expected {n}x{n} entries")
        M = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed matrix JSON: {exc}") from exc
    return as_cmatrix(M)


def read_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_json(obj)


def write_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)))
