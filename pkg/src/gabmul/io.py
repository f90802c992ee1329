"""Plain-text file formats.

* signal CSV: header ``index,re,im``, one row per index;
* matrix CSV: first line ``# {json}`` (``{"n": N, "kind": ...}``), then N rows
  of N complex cells written as ``re+imj``;
* grid CSV: first line ``# {"L": ..., "step": ...}``, header ``t,re,im``;
* real tables (spectrograms, singular values): plain CSV of floats.

Floats are written with ``repr`` so files round-trip exactly and repeated
runs are byte-identical.
"""

import csv
import json
import os
from pathlib import Path

import numpy as np

from .finite import as_matrix, as_signal
from .gauss import GridFunction


class FormatError(ValueError):
    pass


def _fmt(x):
    return repr(float(x))


def _cell(z):
    z = complex(z)
    sign = "+" if z.imag >= 0 or np.isnan(z.imag) else "-"
    return f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}j"


def write_signal(path, f):
    f = as_signal(f)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "re", "im"])
        for i, z in enumerate(f):
            w.writerow([i, _fmt(z.real), _fmt(z.imag)])


def read_signal(path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not rows or [c.strip() for c in rows[0]] != ["index", "re", "im"]:
        raise FormatError(f"{path}: expected header 'index,re,im'")
    body = [r for r in rows[1:] if r]
    out = np.zeros(len(body), dtype=np.complex128)
    for line, row in enumerate(body, start=2):
        if len(row) != 3:
            raise FormatError(f"{path}:{line}: expected 3 columns")
        try:
            idx, re, im = int(row[0]), float(row[1]), float(row[2])
        except ValueError as exc:
            raise FormatError(f"{path}:{line}: {exc}") from exc
        if idx != line - 2:
            raise FormatError(f"{path}:{line}: index {idx} out of order")
        out[idx] = complex(re, im)
    return as_signal(out, str(path))


def write_matrix(path, a, kind="mask", **meta):
    a = as_matrix(a)
    head = {"n": a.shape[0], "kind": kind, **meta}
    with open(path, "w") as fh:
        fh.write("# " + json.dumps(head, sort_keys=True) + "\n")
        for row in a:
            fh.write(",".join(_cell(z) for z in row) + "\n")


def read_matrix(path):
    """Returns (matrix, header dict)."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not lines or not lines[0].startswith("#"):
        raise FormatError(f"{path}: missing '# {{json}}' header line")
    try:
        head = json.loads(lines[0][1:])
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: bad header: {exc}") from exc
    rows = [ln for ln in lines[1:] if ln.strip()]
    try:
        a = np.array([[complex(c.strip()) for c in r.split(",")] for r in rows], dtype=np.complex128)
    except ValueError as exc:
        raise FormatError(f"{path}: bad cell: {exc}") from exc
    a = as_matrix(a, str(path))
    if head.get("n", a.shape[0]) != a.shape[0]:
        raise FormatError(f"{path}: header n={head['n']} but {a.shape[0]} rows")
    return a, head


def write_grid(path, g):
    with open(path, "w", newline="") as fh:
        fh.write("# " + json.dumps({"L": g.half_width, "step": g.step}) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "re", "im"])
        for t, z in zip(g.t, g.samples):
            w.writerow([_fmt(t), _fmt(z.real), _fmt(z.imag)])


def read_grid(path):
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if len(lines) < 2 or not lines[0].startswith("#"):
        raise FormatError(f"{path}: missing header")
    head = json.loads(lines[0][1:])
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[2:] if ln.strip()])
    return GridFunction(head["L"], head["step"], data[:, 1] + 1j * data[:, 2])


def write_real_table(path, rows, header=None):
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow(header)
        for r in rows:
            w.writerow([_fmt(x) for x in r])


def read_real_table(path, header=False):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if header:
        rows = rows[1:]
    return np.array([[float(x) for x in r] for r in rows if r])


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def ensure_dir(path):
    os.makedirs(path, exist_ok=True)
    return Path(path)
