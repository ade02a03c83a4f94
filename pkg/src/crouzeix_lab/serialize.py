"""Wire formats: matrix and zeros JSON, plot-ready CSV files, atomic writes."""

import csv
import json
import os
import tempfile

import numpy as np

from .errors import OutOfRange


def matrix_to_json(a):
    a = np.asarray(a, dtype=complex)
    return {"n": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj):
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise OutOfRange(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise OutOfRange(f"matrix JSON claims n={n} but arrays have shape {re.shape}")
    return re + 1j * im


def zeros_from_json(obj):
    if not isinstance(obj, list) or not obj:
        raise OutOfRange("zeros JSON must be a non-empty list")
    out = []
    for item in obj:
        if isinstance(item, dict):
            out.append(complex(item["re"], item["im"]))
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            out.append(complex(item[0], item[1]))
        else:
            out.append(complex(item))
    return out


def _json_default(obj):
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def write_json_atomic(path, payload):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True, default=_json_default)
            handle.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv_atomic(path, header, rows):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def boundary_csv_rows(boundary):
    for t, z, dz in zip(boundary.thetas, boundary.nodes, boundary.tangents):
        yield (repr(float(t)), repr(float(z.real)), repr(float(z.imag)),
               repr(float(dz.real)), repr(float(dz.imag)))


def density_csv_rows(density):
    weights = density.mu_weights
    # disk-grid rho plus node weights: pad the shorter column
    rows = max(density.theta_grid.size, weights.size)
    for k in range(rows):
        theta = repr(float(density.theta_grid[k])) if k < density.theta_grid.size else ""
        rho = repr(float(density.rho_values[k])) if k < density.rho_values.size else ""
        weight = repr(float(weights[k])) if k < weights.size else ""
        yield (theta, rho, weight)


def census_csv_rows(rows):
    for r in rows:
        yield (
            r.dimension,
            r.sample_index,
            r.seed,
            r.effective_degree,
            repr(float(r.attained_norm)),
            repr(float(r.crouzeix_ratio)),
            r.failure,
        )


CENSUS_HEADER = (
    "dimension",
    "sample_index",
    "seed",
    "effective_degree",
    "attained_norm",
    "crouzeix_ratio",
    "failure",
)
