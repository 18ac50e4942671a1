"""Readers and writers for network, model, time-series and graph files.

JSON matrices are row-major nested lists; floats are written with Python's
shortest round-trip repr, so write -> read -> write is byte-identical.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .connectivity import ManifestGraph
from .errors import DataFormatError
from .lsar import RegularizationConfig
from .netgen import HigherOrderNetwork, PartitionedNetwork
from .simulate import TimeSeriesData
from .spectral import ARModel, Provenance


def _dump(obj, path) -> None:
    text = json.dumps(obj, indent=2, allow_nan=False) + "\n"
    Path(path).write_text(text)


def _load(path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: invalid JSON: {exc.msg}", line=exc.lineno) from exc


def _matrix(value, rows, cols, name):
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DataFormatError(f"matrix is not numeric: {exc}", field=name) from exc
    if arr.size == 0 and rows * cols == 0:
        return np.zeros((rows, cols))
    if arr.shape != (rows, cols):
        raise DataFormatError(f"expected a {rows}x{cols} matrix, got shape {arr.shape}", field=name)
    if not np.all(np.isfinite(arr)):
        raise DataFormatError("matrix has non-finite entries", field=name)
    return arr


def _require(d: dict, key: str):
    if key not in d:
        raise DataFormatError("missing field", field=key)
    return d[key]


def network_to_dict(net: PartitionedNetwork) -> dict:
    return {
        "n_m": net.n_m,
        "n_l": net.n_l,
        "a11": net.a11.tolist(),
        "a12": net.a12.tolist(),
        "a21": net.a21.tolist(),
        "a22": net.a22.tolist(),
        "manifest_labels": list(net.manifest_labels),
        "latent_labels": list(net.latent_labels),
    }


def network_from_dict(d: dict) -> PartitionedNetwork:
    n_m, n_l = int(_require(d, "n_m")), int(_require(d, "n_l"))
    return PartitionedNetwork(
        _matrix(_require(d, "a11"), n_m, n_m, "a11"),
        _matrix(_require(d, "a12"), n_m, n_l, "a12"),
        _matrix(_require(d, "a21"), n_l, n_m, "a21"),
        _matrix(_require(d, "a22"), n_l, n_l, "a22"),
        tuple(d.get("manifest_labels", ())),
        tuple(d.get("latent_labels", ())),
    )


def write_network(net: PartitionedNetwork, path) -> None:
    _dump(network_to_dict(net), path)


def read_network(path) -> PartitionedNetwork:
    return network_from_dict(_load(path))


def write_higher_order(hon: HigherOrderNetwork, path) -> None:
    _dump({"nu": hon.nu, "coeffs": [c.tolist() for c in hon.coeffs],
           "n_m": hon.manifest_count}, path)


def read_higher_order(path) -> HigherOrderNetwork:
    d = _load(path)
    coeffs = _require(d, "coeffs")
    nu = int(d.get("nu", len(coeffs)))
    if nu != len(coeffs):
        raise DataFormatError(f"nu={nu} but {len(coeffs)} coefficient matrices", field="nu")
    if not coeffs:
        raise DataFormatError("no coefficient matrices", field="coeffs")
    n = len(coeffs[0])
    mats = tuple(_matrix(c, n, n, f"coeffs[{i}]") for i, c in enumerate(coeffs))
    return HigherOrderNetwork(mats, int(_require(d, "n_m")))


def model_to_dict(model: ARModel) -> dict:
    d = {
        "n_m": model.n_m,
        "tau": model.order,
        "mats": [m.tolist() for m in model.mats],
        "provenance": model.provenance.value,
        "labels": list(model.labels),
    }
    if model.reg is not None:
        d["reg"] = {"gamma": model.reg.gamma, "rho0": model.reg.rho0}
    return d


def model_from_dict(d: dict) -> ARModel:
    n_m, tau = int(_require(d, "n_m")), int(_require(d, "tau"))
    mats = _require(d, "mats")
    if len(mats) != tau:
        raise DataFormatError(f"tau={tau} but {len(mats)} matrices", field="mats")
    reg = d.get("reg")
    if reg is not None:
        reg = RegularizationConfig(float(reg["gamma"]), float(reg["rho0"]))
    try:
        provenance = Provenance(d.get("provenance", "lsar"))
    except ValueError as exc:
        raise DataFormatError(str(exc), field="provenance") from exc
    return ARModel(tuple(_matrix(m, n_m, n_m, f"mats[{i}]") for i, m in enumerate(mats)),
                   provenance, reg=reg, labels=tuple(d.get("labels", ())))


def write_model(model: ARModel, path) -> None:
    _dump(model_to_dict(model), path)


def read_model(path) -> ARModel:
    return model_from_dict(_load(path))


def _finite_or_none(x):
    return x if isinstance(x, (int, float)) and math.isfinite(x) else None


def write_report(report: dict, path) -> None:
    clean = {k: (_finite_or_none(v) if isinstance(v, float) else v) for k, v in report.items()}
    _dump(clean, path)


def _fmt(x: float) -> str:
    return f"{x:.17e}"


def write_timeseries_csv(data: TimeSeriesData, path, include_inputs: bool = True) -> None:
    """``t,y1..y{n_m}[,u1..u{n_m}]``; row ``t`` holds ``y(t)`` and the input ``u(t-1)`` that produced it."""
    n_m, N = data.outputs.shape
    with_u = include_inputs and data.inputs is not None
    header = ["t"] + [f"y{i}" for i in range(1, n_m + 1)]
    if with_u:
        header += [f"u{i}" for i in range(1, n_m + 1)]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for k in range(N):
            row = [str(k + 1)] + [_fmt(v) for v in data.outputs[:, k]]
            if with_u:
                row += [_fmt(v) for v in data.inputs[:, k]]
            fh.write(",".join(row) + "\n")
    meta = {"seed": data.seed, "rng": data.rng, "dt_label": data.dt_label, "n_m": n_m, "N": N}
    _dump(meta, _meta_path(path))


def _meta_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


def read_timeseries_csv(path) -> TimeSeriesData:
    """Read a record written by :func:`write_timeseries_csv` or an external one with ``y`` columns only.

    A leading ``t`` column is optional; columns named ``u*`` are inputs,
    every other column is an output channel.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataFormatError(f"{path}: empty file", line=1) from None
        cols_t = [i for i, h in enumerate(header) if h == "t"]
        cols_u = [i for i, h in enumerate(header) if h.startswith("u")]
        cols_y = [i for i, h in enumerate(header) if i not in cols_t and i not in cols_u]
        if not cols_y:
            raise DataFormatError(f"{path}: no output columns", line=1)
        if cols_u and len(cols_u) != len(cols_y):
            raise DataFormatError(f"{path}: {len(cols_u)} input columns for {len(cols_y)} outputs",
                                  line=1)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataFormatError(f"{path}: expected {len(header)} fields, got {len(row)}",
                                      line=lineno)
            try:
                rows.append([float(c) for c in row])
            except ValueError as exc:
                bad = next(header[i] for i, c in enumerate(row) if not _is_float(c))
                raise DataFormatError(f"{path}: {exc}", line=lineno, field=bad) from None
    if not rows:
        raise DataFormatError(f"{path}: no data rows", line=2)
    table = np.array(rows)
    if not np.all(np.isfinite(table)):
        raise DataFormatError(f"{path}: non-finite values")
    seed = dt_label = rng = None
    meta_path = _meta_path(path)
    if meta_path.exists():
        meta = _load(meta_path)
        seed, dt_label, rng = meta.get("seed"), meta.get("dt_label"), meta.get("rng")
    inputs = table[:, cols_u].T if cols_u else None
    return TimeSeriesData(table[:, cols_y].T, inputs, seed, dt_label, rng)


def _is_float(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def graph_to_dict(graph: ManifestGraph) -> dict:
    return {
        "n_m": graph.n_m,
        "labels": list(graph.labels),
        "threshold": graph.threshold_used,
        "indirect_threshold": graph.indirect_threshold,
        "path_order_exact": graph.path_order_exact,
        "direct": [{"src": s, "dst": t, "weight": w} for s, t, w in graph.direct_edges()],
        "indirect": [{"src": s, "dst": t, "orders": list(o), "min_order": o[0]}
                     for s, t, o in graph.indirect_edges()],
    }


def write_graph(graph: ManifestGraph, path) -> None:
    _dump(graph_to_dict(graph), path)


def write_edge_csv(graph: ManifestGraph, path) -> None:
    """Edge list ``src,dst,kind,weight_or_order`` for external renderers."""
    with open(path, "w", newline="") as fh:
        fh.write("src,dst,kind,weight_or_order\n")
        for s, t, w in graph.direct_edges():
            fh.write(f"{s},{t},direct,{w!r}\n")
        for s, t, o in graph.indirect_edges():
            fh.write(f"{s},{t},indirect,{o[0]}\n")


def write_table_csv(header, rows, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)
