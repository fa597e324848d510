"""Plain-text field files.

A field file is a one-line JSON header followed by one grid row per
line:

    {"kind": "spin", "n": 128, "pad": 8}
    0 0 1 3 ...
    ...

* kind "spin": n lines of n well labels (integers 0..3);
* kind "vector": n lines of 2n floats, the two components of each cell
  interleaved (v1 v2 v1 v2 ...);
* kind "scalar": n lines of n floats.

Line i holds the cells with first index i (x index), left to right in
j (y index).  The format is deliberately trivial so that plotting
tools in other languages can consume it with a JSON parser and a
float split.
"""

from __future__ import annotations

import json

import numpy as np

from .grid import GridSpec, ScalarField, SpinField, VectorField

_KINDS = ("spin", "vector", "scalar")


def save_field(f: SpinField | VectorField | ScalarField, path) -> None:
    if isinstance(f, SpinField):
        kind, rows = "spin", [" ".join(str(int(x)) for x in row)
                              for row in f.values]
    elif isinstance(f, VectorField):
        kind, rows = "vector", [" ".join(repr(float(x)) for x in row.ravel())
                                for row in f.values]
    elif isinstance(f, ScalarField):
        kind, rows = "scalar", [" ".join(repr(float(x)) for x in row)
                                for row in f.values]
    else:
        raise TypeError(f"cannot save a {type(f).__name__}")
    header = {"kind": kind, "n": f.spec.n, "pad": f.spec.pad}
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        fh.write("\n".join(rows) + "\n")


def load_field(path) -> SpinField | VectorField | ScalarField:
    with open(path) as fh:
        first = fh.readline()
        try:
            header = json.loads(first)
        except json.JSONDecodeError as e:
            raise ValueError(f"{path}: first line is not a JSON header") from e
        if not isinstance(header, dict) or "kind" not in header or "n" not in header:
            raise ValueError(f"{path}: header must carry 'kind' and 'n'")
        kind = header["kind"]
        if kind not in _KINDS:
            raise ValueError(f"{path}: unknown field kind {kind!r}")
        n = int(header["n"])
        spec = GridSpec(n, pad=int(header.get("pad", 8)))
        body = fh.read().split()
    per_row = 2 * n if kind == "vector" else n
    expected = n * per_row
    if len(body) != expected:
        raise ValueError(
            f"{path}: expected {expected} values for kind {kind!r} at n={n}, "
            f"found {len(body)}")
    if kind == "spin":
        vals = np.array(body, dtype=np.int64).reshape(n, n)
        return SpinField(spec, vals)
    vals = np.array(body, dtype=float)
    if kind == "vector":
        return VectorField(spec, vals.reshape(n, n, 2))
    return ScalarField(spec, vals.reshape(n, n))
