"""Boundary-data JSON, sample CSV and field CSV.

JSON layout: {"alpha", "a", "N", "ut", "un", "trace_anchor"} with coefficient
lists [[re, im], ...] ordered n = -N..N; "un" may be null. The anchor is
u at theta = 0 (the point a + 1).
"""
import csv
import io as _io
import json

import numpy as np

from .boundary import BoundaryData, TrigSeries, fit, trace_from_ut

FMT = "{:.17g}"


class SchemaError(ValueError):
    pass


def _coeffs_out(s, N):
    return [[float(c.real), float(c.imag)] for c in s.pad(N).coeffs]


def _coeffs_in(raw, N, name):
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{name}: coefficients must be [re, im] pairs") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise SchemaError(f"{name}: expected a list of [re, im] pairs")
    if arr.shape[0] != 2 * N + 1:
        raise SchemaError(f"{name}: expected {2 * N + 1} coefficients for N={N}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{name}: non-finite coefficient")
    return TrigSeries(arr[:, 0] + 1j * arr[:, 1])


def data_to_dict(data, extra=None):
    N = data.N
    out = {
        "alpha": int(data.alpha),
        "a": float(data.a),
        "N": int(N),
        "ut": _coeffs_out(data.ut, N),
        "un": None if data.un is None else _coeffs_out(data.un, N),
        "trace_anchor": None if data.trace is None else float(data.u_at(0.0)),
    }
    if extra:
        out.update(extra)
    return out


def data_from_dict(doc):
    if not isinstance(doc, dict):
        raise SchemaError("boundary document must be a JSON object")
    for key in ("alpha", "a", "N", "ut"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    alpha, a, N = doc["alpha"], doc["a"], doc["N"]
    if not isinstance(alpha, int) or isinstance(alpha, bool):
        raise SchemaError("alpha must be an integer")
    if not isinstance(N, int) or N < 0:
        raise SchemaError("N must be a non-negative integer")
    try:
        a = float(a)
    except (TypeError, ValueError) as exc:
        raise SchemaError("a must be a number") from exc
    if not a > 1:
        raise SchemaError("a must exceed 1")
    ut = _coeffs_in(doc["ut"], N, "ut")
    un = _coeffs_in(doc["un"], N, "un") if doc.get("un") is not None else None
    anchor = doc.get("trace_anchor")
    try:
        trace = trace_from_ut(ut, float(anchor)) if anchor is not None else None
        return BoundaryData(alpha, a, ut, un, trace)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def dumps(obj):
    """JSON with 17 significant digits and sorted keys (byte-stable)."""
    def conv(v):
        if isinstance(v, float):
            return float(FMT.format(v))
        if isinstance(v, dict):
            return {k: conv(w) for k, w in v.items()}
        if isinstance(v, (list, tuple)):
            return [conv(w) for w in v]
        if isinstance(v, np.generic):
            return conv(v.item())
        return v
    return json.dumps(conv(obj), sort_keys=True, indent=1, allow_nan=True) + "\n"


def save_json(obj, path):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})") from exc


def load_data(path):
    if str(path).endswith(".csv"):
        raise SchemaError("sample CSV needs alpha and a; use read_samples_csv")
    return data_from_dict(load_json(path))


def save_data(data, path, extra=None):
    save_json(data_to_dict(data, extra), path)


def read_samples_csv(path, alpha, a, N):
    """Columns theta,ut,un on a uniform grid; un may be empty."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or "theta" not in rows[0] or "ut" not in rows[0]:
        raise SchemaError("sample CSV needs columns theta,ut[,un]")
    th = np.array([float(r["theta"]) for r in rows])
    ut = fit(th, np.array([float(r["ut"]) for r in rows]), N).real()
    un = None
    if "un" in rows[0] and all(r["un"] not in ("", None) for r in rows):
        un = fit(th, np.array([float(r["un"]) for r in rows]), N).real()
    ut.coeffs[ut.N] = 0.0
    return BoundaryData(alpha, a, ut, un)


def write_samples_csv(data, path, M=None):
    M = M or 4 * data.N + 4
    th = 2 * np.pi * np.arange(M) / M
    cols = [th, data.ut.samples(M).real]
    if data.un is not None:
        cols.append(data.un.samples(M).real)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["theta", "ut", "un"][:len(cols)])
        for row in zip(*cols):
            w.writerow([FMT.format(v) for v in row])


def field_csv(points, values):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "u"])
    for z, v in zip(np.ravel(points), np.ravel(values)):
        w.writerow([FMT.format(z.real), FMT.format(z.imag), FMT.format(float(v))])
    return buf.getvalue()


def table_csv(header, rows):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([FMT.format(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()
