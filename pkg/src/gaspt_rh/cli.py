"""gaspt-rh: solve | dtn | verify | oracle | convergence.

Exit codes: 0 ok, 2 invalid input, 3 numerical failure, 4 unsupported mode.
"""
import argparse
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__, dtn, io, oracles
from .boundary import BoundaryData
from .solve import field_values, grid

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_UNSUPPORTED = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    alpha: int | None = None
    a: float | None = None
    n_circle: int | None = None
    n_chord: int = 64
    grid: tuple = (20, 20, 0.1)
    input: str | None = None
    output: str | None = None
    tol: float = 1e-8
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.a is not None and not self.a > 1:
            raise ValueError("a must exceed 1")
        nx, ny, margin = self.grid
        if nx < 1 or ny < 1:
            raise ValueError("grid sizes must be positive")
        if margin < 0.05:
            raise ValueError("margin must be at least 0.05")


class CliError(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _parse_grid(text):
    try:
        nx, ny, margin = text.split(",")
        return int(nx), int(ny), float(margin)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("grid must be nx,ny,margin") from exc


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(cfg, need_un=True):
    if not cfg.input:
        raise CliError(EXIT_INPUT, "--in is required")
    try:
        if cfg.input.endswith(".csv"):
            if cfg.alpha is None or cfg.a is None:
                raise io.SchemaError("CSV input needs --alpha and --a")
            data = io.read_samples_csv(cfg.input, cfg.alpha, cfg.a, cfg.extra.get("N", 32))
            if cfg.extra.get("anchor") is not None:
                data = data.with_anchor(cfg.extra["anchor"])
        else:
            data = io.load_data(cfg.input)
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    if cfg.alpha is not None and cfg.alpha != data.alpha:
        raise CliError(EXIT_INPUT, f"--alpha {cfg.alpha} disagrees with input alpha {data.alpha}")
    if cfg.a is not None and abs(cfg.a - data.a) > 1e-15:
        raise CliError(EXIT_INPUT, f"--a {cfg.a} disagrees with input a {data.a}")
    if need_un and data.un is None:
        raise CliError(EXIT_INPUT, "input has no u_n; run `dtn` first")
    return data


def cmd_solve(cfg):
    data = _load(cfg)
    if data.trace is None:
        raise CliError(EXIT_INPUT, "trace_anchor is required to evaluate the field")
    nx, ny, margin = cfg.grid
    pts = grid(data.a, nx, ny, margin)
    t0 = time.perf_counter()
    res = field_values(pts, data, cfg.n_circle, cfg.n_chord)
    elapsed = time.perf_counter() - t0
    csv_text = io.field_csv(res.points, res.values)
    _emit(csv_text, cfg.output)
    if cfg.output not in (None, "-"):
        meta = dict(res.meta)
        meta.update(points=int(pts.size), grid=list(cfg.grid), seconds=elapsed)
        if data.un is not None:
            meta["residual_norm"] = dtn.residual_norm(data)
        io.save_json(meta, cfg.output + ".meta.json")
    return EXIT_OK


def cmd_dtn(cfg):
    data = _load(cfg, need_un=False)
    if data.alpha % 2:
        raise CliError(EXIT_UNSUPPORTED, "Neumann reconstruction exists for even alpha only; "
                                         "odd data can be checked with `verify` (global relation residual)")
    if data.alpha > 0 and data.trace is None:
        raise CliError(EXIT_INPUT, "positive alpha needs trace_anchor")
    r = dtn.reconstruct_un(data)
    out = BoundaryData(data.alpha, data.a, data.ut, r.un, data.trace, data.meta)
    doc = io.data_to_dict(out, {"residual_norm": r.residual_norm, "condition": r.condition})
    _emit(io.dumps(doc), cfg.output)
    return EXIT_OK


def cmd_verify(cfg):
    data = _load(cfg)
    ks = dtn.exterior_points(data.a)
    res = np.array([dtn.global_residual(data, k) for k in ks])
    worst = float(np.max(np.abs(res)))
    scale = max(data.norm(), 1.0)
    report = {
        "alpha": data.alpha,
        "a": data.a,
        "k": [[float(k.real), float(k.imag)] for k in ks],
        "residual": [[float(r.real), float(r.imag)] for r in res],
        "max_residual": worst,
        "data_norm": data.norm(),
        "tol": cfg.tol,
        "pass": bool(worst <= cfg.tol * scale),
    }
    _emit(io.dumps(report), cfg.output)
    return EXIT_OK


def cmd_oracle(cfg):
    name = cfg.extra.get("name")
    try:
        u = oracles.named(name, cfg.a or 2.0)
    except KeyError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    data = oracles.boundary_trace(u, cfg.a or 2.0, cfg.extra.get("N", 32))
    if cfg.extra.get("no_un"):
        data = BoundaryData(data.alpha, data.a, data.ut, None, data.trace)
    _emit(io.dumps(io.data_to_dict(data, {"oracle": name})), cfg.output)
    return EXIT_OK


def convergence_rows(u, a=2.0, nx=6, margin=0.1):
    """(kind, nodes or h, max error, observed order) for the RH path and the FD oracle."""
    pts = grid(a, nx, nx, margin)
    exact = u.at(pts)
    scale = max(1.0, float(np.max(np.abs(exact))))
    data = oracles.boundary_trace(u, a, 24)
    rows = []
    Ns = (128, 256, 512) if u.alpha % 2 else (64, 128, 256)
    prev = None
    for N in Ns:
        err = float(np.max(np.abs(field_values(pts, data, N).values - exact))) / scale
        order = np.log2(prev / err) if prev and err > 0 else float("nan")
        rows.append(("rh", N, err, float(order)))
        prev = err
    prev = None
    for h in (0.1, 0.05, 0.025):
        g = oracles.fd_solve(u.alpha, data.trace, h, a)
        P = g.points()
        e = float(np.max(np.abs(g.values - u.at(P)))) / scale
        order = np.log2(prev / e) if prev else float("nan")
        rows.append(("fd", g.h, e, float(order)))
        prev = e
    return rows


def cmd_convergence(cfg):
    name = cfg.extra.get("name")
    try:
        u = oracles.named(name, cfg.a or 2.0)
    except KeyError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    if cfg.alpha is not None and cfg.alpha != u.alpha:
        raise CliError(EXIT_INPUT, f"oracle {name} solves alpha={u.alpha}")
    rows = convergence_rows(u, cfg.a or 2.0)
    _emit(io.table_csv(["kind", "n_or_h", "max_error", "order"], rows), cfg.output)
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "dtn": cmd_dtn, "verify": cmd_verify, "oracle": cmd_oracle,
            "convergence": cmd_convergence}


def build_parser():
    p = argparse.ArgumentParser(prog="gaspt-rh", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--alpha", type=int)
        s.add_argument("--a", type=float)
        s.add_argument("--n-circle", type=int)
        s.add_argument("--n-chord", type=int, default=64)
        s.add_argument("--grid", type=_parse_grid, default=(20, 20, 0.1))
        s.add_argument("--in", dest="input")
        s.add_argument("--out", dest="output")
        s.add_argument("--tol", type=float, default=1e-8)
        s.add_argument("--N", type=int, default=32, help="series order for oracle and CSV input")
        s.add_argument("--anchor", type=float, help="u at theta = 0 for CSV input")
        if name in ("oracle", "convergence"):
            s.add_argument("--name", required=True, help="oracle name, e.g. x2-y2")
        if name == "oracle":
            s.add_argument("--no-un", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.command, args.alpha, args.a, args.n_circle, args.n_chord, args.grid,
                        args.input, args.output, args.tol,
                        {"name": getattr(args, "name", None), "N": args.N, "anchor": args.anchor,
                         "no_un": getattr(args, "no_un", False)})
        return COMMANDS[args.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotImplementedError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (FloatingPointError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
