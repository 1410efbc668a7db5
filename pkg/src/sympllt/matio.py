"""Plain-text matrix files with bitwise round-trip guarantees.

Format: optional comment lines starting with '#', then a header line
"rows cols" (base-10 integers, single space), then one line per row with
space-separated entries.  Values are written as the shortest decimal
strings that parse back to the exact same 64-bit float (Python repr), so
write -> read is lossless.
"""

import numpy as np

from .dense import as_matrix
from .errors import ParseError


def write_matrix(path, a, comment=None):
    a = as_matrix(a)
    with open(path, "w", encoding="ascii") as fh:
        if comment:
            for line in str(comment).splitlines():
                fh.write(f"# {line}\n")
        fh.write(f"{a.shape[0]} {a.shape[1]}\n")
        for row in a:
            fh.write(" ".join(repr(float(v)) for v in row))
            fh.write("\n")


def read_matrix(path):
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()

    k = 0
    while k < len(lines) and lines[k].lstrip().startswith("#"):
        k += 1
    if k >= len(lines):
        raise ParseError(len(lines) + 1, "missing header line")
    header = lines[k].split()
    if len(header) != 2:
        raise ParseError(k + 1, f"header must be 'rows cols', got {lines[k]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(k + 1, f"non-integer header fields in {lines[k]!r}") from None
    if rows < 1 or cols < 1:
        raise ParseError(k + 1, "rows and cols must be positive")

    out = np.empty((rows, cols))
    for i in range(rows):
        lineno = k + 2 + i
        if k + 1 + i >= len(lines):
            raise ParseError(lineno, f"expected {rows} data rows, file ended early")
        parts = lines[k + 1 + i].split()
        if len(parts) != cols:
            raise ParseError(lineno, f"expected {cols} values, got {len(parts)}")
        for j, tok in enumerate(parts):
            try:
                val = float(tok)
            except ValueError:
                raise ParseError(lineno, f"bad float literal {tok!r}") from None
            if not np.isfinite(val):
                raise ParseError(lineno, f"non-finite value {tok!r}")
            out[i, j] = val
    return out
