"""Versioned JSON file formats (label cover instances, assignments, vertex
fields, bilinear-form tensors, reports) and CSV tables.

Serialization is canonical: sorted keys, fixed separators, newline at end.
Writing what was read reproduces the file byte for byte, and a fixed seed
reproduces identical outputs. Vertices and labels are 1-based on disk and
0-based in memory; complex scalars are stored as [re, im] pairs.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .config import FORMAT_VERSION
from .labelcover import Edge, LabelCoverInstance
from .solvers import NcgTensor


def dump_json(obj, path) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    Path(path).write_text(text + "\n")


def load_json(path):
    return json.loads(Path(path).read_text())


def _require_version(doc, kind: str):
    if not isinstance(doc, dict) or "version" not in doc:
        raise ValueError(f"{kind} file is missing its version field")
    if doc["version"] != FORMAT_VERSION:
        raise ValueError(f"unsupported {kind} format version {doc['version']!r}")


# ---------------------------------------------------------------------------
# Label cover instances and assignments


def save_instance(inst: LabelCoverInstance, path) -> None:
    doc = {
        "version": FORMAT_VERSION,
        "n": inst.n,
        "k": inst.k,
        "t": inst.t,
        "gamma": inst.gamma,
        "zeta": inst.zeta,
        "vertices": inst.num_vertices,
        "edges": [
            {
                "u": e.u + 1,
                "v": e.v + 1,
                "pi_u": (e.pi_u + 1).tolist(),
                "pi_v": (e.pi_v + 1).tolist(),
            }
            for e in inst.edges
        ],
    }
    dump_json(doc, path)


def load_instance(path) -> LabelCoverInstance:
    doc = load_json(path)
    _require_version(doc, "instance")
    try:
        edges = [
            Edge(u=entry["u"] - 1, v=entry["v"] - 1,
                 pi_u=np.asarray(entry["pi_u"], dtype=int) - 1,
                 pi_v=np.asarray(entry["pi_v"], dtype=int) - 1)
            for entry in doc["edges"]
        ]
        return LabelCoverInstance(num_vertices=doc["vertices"], n=doc["n"], k=doc["k"],
                                  t=doc["t"], gamma=doc["gamma"], zeta=doc["zeta"],
                                  edges=edges)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed instance file: {exc}") from exc


def save_assignment(labels, path) -> None:
    labels = np.asarray(labels, dtype=int).reshape(-1)
    dump_json({"version": FORMAT_VERSION, "labels": (labels + 1).tolist()}, path)


def load_assignment(path) -> np.ndarray:
    doc = load_json(path)
    _require_version(doc, "assignment")
    return np.asarray(doc["labels"], dtype=int) - 1


# ---------------------------------------------------------------------------
# Vertex vector fields


def save_field(fld, path) -> None:
    fld = np.asarray(fld, dtype=np.complex128)
    if fld.ndim != 2:
        raise ValueError("field must be a (vertices, n) array")
    values = [[[float(z.real), float(z.imag)] for z in row] for row in fld]
    dump_json({"version": FORMAT_VERSION, "vertices": fld.shape[0], "n": fld.shape[1],
               "values": values}, path)


def load_field(path) -> np.ndarray:
    doc = load_json(path)
    _require_version(doc, "field")
    values = doc["values"]
    if len(values) != doc["vertices"]:
        raise ValueError("field file vertex count does not match values")
    out = np.zeros((doc["vertices"], doc["n"]), dtype=np.complex128)
    for v, row in enumerate(values):
        if len(row) != doc["n"]:
            raise ValueError("field file row length does not match n")
        for i, (re, im) in enumerate(row):
            out[v, i] = complex(re, im)
    return out


# ---------------------------------------------------------------------------
# Bilinear-form tensors


def save_tensor(tensor: NcgTensor, path) -> None:
    entries = [
        [int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1, float(c.real), float(c.imag)]
        for (i, j, k, l), c in zip(tensor.indices, tensor.coeffs)
    ]
    dump_json({"version": FORMAT_VERSION, "d": tensor.d, "entries": entries}, path)


def load_tensor(path) -> NcgTensor:
    doc = load_json(path)
    _require_version(doc, "tensor")
    entries = doc["entries"]
    indices = np.zeros((len(entries), 4), dtype=np.int64)
    coeffs = np.zeros(len(entries), dtype=np.complex128)
    for row_num, entry in enumerate(entries):
        if len(entry) != 6:
            raise ValueError(f"tensor entry {row_num} must have 6 values [i,j,k,l,re,im]")
        i, j, k, l, re, im = entry
        indices[row_num] = (i - 1, j - 1, k - 1, l - 1)
        coeffs[row_num] = complex(re, im)
    return NcgTensor(d=doc["d"], indices=indices, coeffs=coeffs)


# ---------------------------------------------------------------------------
# Tables and reports


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def save_report(report: dict, path) -> None:
    doc = dict(report)
    doc.setdefault("version", FORMAT_VERSION)
    dump_json(doc, path)
