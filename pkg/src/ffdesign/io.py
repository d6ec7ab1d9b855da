"""Reading and writing designs: column lists, generator notation, +1/-1
design matrices and JSON records.

Row t of a design matrix is the run whose basic factors sit at the levels
given by the bits of t; the entry for column c is +1 when c AND t has an
even number of bits, so row 0 is all +1 and I is the all-+1 column.
"""

from __future__ import annotations

import csv
import io as _io
import json

import numpy as np

from .construct import GeneratorSet, MaResult, generators_of
from .errors import DesignError
from .gf2 import Design, letters, log2_runs, parse_column
from .wlp import wlp

FORMATS = ("generators", "columns", "matrix-csv", "json")


def design_matrix(d: Design) -> np.ndarray:
    """n x k array of +1/-1 in standard run order."""
    rows = np.arange(d.n, dtype=np.int64)[:, None]
    cols = np.array(d.columns, dtype=np.int64)[None, :]
    odd = np.bitwise_count(rows & cols) & 1
    return (1 - 2 * odd).astype(np.int8)


def matrix_to_design(labels: list[str], matrix: np.ndarray) -> Design:
    """Recover the columns from the rows at powers of two and check the rest."""
    n, k = matrix.shape
    m = log2_runs(n)
    if len(labels) != k:
        raise DesignError(f"{len(labels)} labels for {k} matrix columns")
    cols = []
    for j in range(k):
        cols.append(sum(1 << b for b in range(m) if matrix[1 << b, j] == -1))
    d = Design(m, tuple(cols))
    if not np.array_equal(design_matrix(d), matrix):
        raise DesignError("matrix is not a regular two-level fraction in standard order")
    for label, c in zip(labels, cols):
        if parse_column(label, m) != c:
            raise DesignError(f"label {label!r} does not match its column ({letters(c)})")
    return d


def render_matrix_csv(d: Design) -> str:
    out = _io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(letters(c) for c in d.columns)
    for row in design_matrix(d):
        writer.writerow(f"{int(x):+d}" for x in row)
    return out.getvalue()


def parse_matrix_csv(text: str) -> Design:
    rows = [r for r in csv.reader(_io.StringIO(text)) if r]
    if len(rows) < 2:
        raise DesignError("matrix CSV needs a header and at least one run")
    try:
        body = np.array([[int(x) for x in r] for r in rows[1:]], dtype=np.int64)
    except ValueError as exc:
        raise DesignError(f"matrix entries must be +1 or -1: {exc}") from None
    if body.ndim != 2 or not np.isin(body, (-1, 1)).all():
        raise DesignError("matrix entries must be +1 or -1 in equal-length rows")
    return matrix_to_design([h.strip() for h in rows[0]], body)


def design_record(d: Design, result: MaResult | None = None) -> dict:
    """Structured record with fields runs, factors, columns, generators, wlp, resolution, certificate."""
    pattern = result.wlp if result is not None else wlp(d)
    try:
        gens = str(generators_of(d))
    except DesignError:
        gens = None
    return {
        "runs": d.n,
        "factors": d.k,
        "columns": [letters(c) for c in d.columns],
        "generators": gens,
        "wlp": list(pattern),
        "resolution": next((i for i, a in enumerate(pattern, 1) if a), 0),
        "certificate": result.certificate.value if result is not None else None,
    }


def parse_record(text: str) -> Design:
    try:
        rec = json.loads(text)
        m = log2_runs(rec["runs"])
        return Design(m, tuple(parse_column(w, m) for w in rec["columns"]))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise DesignError(f"not a design record: {exc}") from None


def render(d: Design, fmt: str, result: MaResult | None = None) -> str:
    """Text for one design in the given format (no trailing newline)."""
    if fmt == "generators":
        return str(generators_of(d))
    if fmt == "columns":
        return str(d)
    if fmt == "matrix-csv":
        return render_matrix_csv(d).rstrip("\n")
    if fmt == "json":
        return json.dumps(design_record(d, result))
    raise DesignError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def parse(text: str, fmt: str, m: int | None = None) -> Design:
    if fmt == "generators":
        return GeneratorSet.parse(text).design()
    if fmt == "columns":
        return Design.parse(text, m)
    if fmt == "matrix-csv":
        return parse_matrix_csv(text)
    if fmt == "json":
        return parse_record(text)
    raise DesignError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def sniff_format(text: str) -> str:
    body = text.strip()
    if body.startswith("{"):
        return "json"
    if body.startswith("I="):
        return "generators"
    if "\n" in body:
        return "matrix-csv"
    return "columns"


def read_design(spec: str, m: int | None = None) -> Design:
    """A design from a command-line spec; '@path' reads the spec from a file."""
    if spec.startswith("@"):
        try:
            with open(spec[1:], encoding="utf-8") as fh:
                spec = fh.read()
        except OSError as exc:
            raise DesignError(f"cannot read {spec[1:]}: {exc.strerror}") from None
    return parse(spec.strip(), sniff_format(spec), m)

