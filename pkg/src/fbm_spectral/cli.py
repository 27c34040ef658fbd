"""Command-line front end.

Subcommands: ``simulate``, ``errors``, ``operator``, ``basis``. Every
subcommand writes one CSV or JSON document to ``--out`` (stdout when
omitted). CSV uses ``#`` comment lines for metadata and 17 significant
digits; JSON has top-level ``meta`` and ``data`` keys.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import __version__, golden
from .errors import convergence_rate, error_table
from .exceptions import SpectralError
from .fbm import assemble_kernel, cholesky_factor, covariance_spectrum, make_hurst
from .legendre import BasisSpec, eval_basis
from .operators import frac_int_left, frac_int_right, inversion_matrix, mult_matrix
from .sim import simulate

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3

_SELECTORS = ("mult", "int-left", "int-right", "inversion", "kernel", "covariance", "cholesky")


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".16e")


def _short(x: float) -> str:
    return format(float(x), ".12g")


def parse_range(text: str) -> list[float]:
    """``"0.5"``, ``"0.1,0.3"`` or inclusive ``"a:b:step"``."""
    text = text.strip()
    if not text:
        raise UsageError("empty value list")
    if ":" in text:
        try:
            a, b, step = (float(p) for p in text.split(":"))
        except ValueError:
            raise UsageError(f"bad range {text!r}; expected a:b:step") from None
        if step <= 0 or b < a:
            raise UsageError(f"bad range {text!r}")
        n = int(math.floor((b - a) / step + 1e-12))
        vals = [round(a + k * step, 12) for k in range(n + 1)]
        if abs(a + (n + 1) * step - b) <= 1e-12:
            vals.append(round(b, 12))
        return vals
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad number list {text!r}") from None


def parse_orders(text: str) -> list[int]:
    vals = [v for v in (p.strip() for p in text.split(",")) if v]
    if not vals:
        raise UsageError("empty order list")
    try:
        out = [int(v) for v in vals]
    except ValueError:
        raise UsageError(f"bad order list {text!r}") from None
    if any(v < 1 for v in out):
        raise UsageError("orders must be positive")
    return out


def parse_grid(text: str, T: float) -> np.ndarray:
    if "," in text:
        grid = np.array(parse_range(text))
    else:
        try:
            n = int(text)
        except ValueError:
            raise UsageError(f"bad grid {text!r}; give a point count or a comma list") from None
        if n < 1:
            raise UsageError("grid needs at least one point")
        grid = np.linspace(0.0, T, n)
    if grid.size == 0:
        raise UsageError("grid needs at least one point")
    return grid


def _csv(meta: dict, header: list[str], rows) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {value}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def _json(meta: dict, data) -> str:
    return json.dumps({"meta": meta, "data": data}, allow_nan=False) + "\n"


def _matrix_doc(M: np.ndarray, meta: dict, form: str) -> str:
    if form == "json":
        return _json(meta, M.tolist())
    return _csv(meta, [f"c{j}" for j in range(M.shape[1])], ([fmt(x) for x in row] for row in M))


def cmd_simulate(args) -> tuple[str, int]:
    T, L = args.horizon, args.order
    grid = parse_grid(args.grid, T)
    liouville = args.mode == "liouville"
    sample = simulate(args.hurst, T, L, grid, args.paths, args.seed,
                      mode="strong" if liouville else args.mode, liouville=liouville)
    meta = {"program": "fbm-spectral", "version": __version__, "command": "simulate",
            "H": _short(args.hurst), "T": _short(T), "L": L, "seed": args.seed,
            "mode": args.mode, "paths": args.paths}
    if args.format == "json":
        return _json(meta, {"t": sample.grid.tolist(), "paths": sample.values.tolist()}), EXIT_OK
    header = ["t"] + [f"path{p}" for p in range(args.paths)]
    rows = ([fmt(t)] + [fmt(v) for v in sample.values[:, k]] for k, t in enumerate(sample.grid))
    return _csv(meta, header, rows), EXIT_OK


def check_against_reference(reports) -> list[str]:
    """Messages for every cell deviating from the published tables."""
    failures = []
    for row in reports:
        for r in row:
            if r.T != 1.0:
                continue
            for name, table, value in (("eps", golden.EPS, r.eps), ("eps1", golden.EPS1, r.eps1)):
                ref = golden.lookup(table, r.H, r.L)
                if ref is not None and abs(value - ref) > golden.TOLERANCE:
                    failures.append(f"{name}(H={_short(r.H)}, L={r.L}) = {value:.8f}, reference {ref:.6f}")
    return failures


def cmd_errors(args) -> tuple[str, int]:
    Hs = parse_range(args.hurst_list)
    Ls = parse_orders(args.orders)
    reports = error_table(Hs, Ls, args.horizon)
    rates = [convergence_rate(Ls, [r.eps for r in row]) if len(Ls) >= 3 else math.nan for row in reports]
    status = EXIT_OK
    if args.paper_check:
        failures = check_against_reference(reports)
        for msg in failures:
            print(f"reference check failed: {msg}", file=sys.stderr)
        status = EXIT_CHECK_FAILED if failures else EXIT_OK
    meta = {"program": "fbm-spectral", "version": __version__, "command": "errors", "T": _short(args.horizon)}
    if args.format == "json":
        data = [{"H": r.H, "L": r.L, "eps": r.eps, "eps1": r.eps1, "eps2": r.eps2,
                 "gamma": None if math.isnan(g) else g}
                for row, g in zip(reports, rates) for r in row]
        return _json(meta, data), status
    if args.format == "text":
        return format_table(reports, Ls), status
    rows = ([_short(r.H), str(r.L), fmt(r.eps), fmt(r.eps1), fmt(r.eps2), fmt(g)]
            for row, g in zip(reports, rates) for r in row)
    return _csv(meta, ["H", "L", "eps", "eps1", "eps2", "gamma"], rows), status


def format_table(reports, Ls) -> str:
    """Aligned ``H x L`` text tables of ``eps`` and ``eps1`` at 6 decimals."""
    out = []
    for title, attr in (("eps", "eps"), ("eps1", "eps1")):
        out.append(title)
        out.append("  H   " + " ".join(f"{'L = ' + str(L):>9}" for L in Ls))
        for row in reports:
            out.append(f"{row[0].H:4.2g}  " + " ".join(f"{getattr(r, attr):9.6f}" for r in row))
        out.append("")
    return "\n".join(out)


def parse_selector(text: str) -> tuple[str, float | None]:
    name, _, arg = text.partition(":")
    if name not in _SELECTORS:
        raise UsageError(f"unknown operator {name!r}; choose from {', '.join(_SELECTORS)}")
    if name == "inversion":
        if arg:
            raise UsageError("inversion takes no parameter")
        return name, None
    try:
        return name, float(arg)
    except ValueError:
        raise UsageError(f"operator {name!r} needs a numeric parameter, e.g. {name}:0.5") from None


def build_operator(name: str, value: float | None, spec: BasisSpec) -> np.ndarray:
    if name == "mult":
        return mult_matrix(value, spec).entries
    if name == "int-left":
        return frac_int_left(value, spec).entries
    if name == "int-right":
        return frac_int_right(value, spec).entries
    if name == "inversion":
        return inversion_matrix(spec).entries
    h = make_hurst(value)
    if name == "kernel":
        return assemble_kernel(h, spec).entries
    S = covariance_spectrum(h, spec)
    return S.entries if name == "covariance" else cholesky_factor(S).entries


def cmd_operator(args) -> tuple[str, int]:
    name, value = parse_selector(args.selector)
    spec = BasisSpec(args.horizon, args.order)
    M = build_operator(name, value, spec)
    meta = {"program": "fbm-spectral", "version": __version__, "T": _short(spec.T), "L": spec.L}
    return _matrix_doc(M, meta, args.format), EXIT_OK


def cmd_basis(args) -> tuple[str, int]:
    spec = BasisSpec(args.horizon, args.order)
    grid = parse_grid(args.grid, spec.T)
    Q = eval_basis(grid, spec)
    meta = {"program": "fbm-spectral", "version": __version__, "command": "basis",
            "T": _short(spec.T), "L": spec.L}
    if args.format == "json":
        return _json(meta, {"t": grid.tolist(), "basis": Q.T.tolist()}), EXIT_OK
    header = ["t"] + [f"q{i}" for i in range(spec.L)]
    rows = ([fmt(t)] + [fmt(v) for v in q] for t, q in zip(grid, Q))
    return _csv(meta, header, rows), EXIT_OK


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fbm-spectral",
        description="Fractional Brownian motion in continuous time via Legendre spectral characteristics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", "-T", type=_positive_float, default=1.0, help="interval length T (default 1)")
    common.add_argument("--out", "-o", default=None, help="output file (default: stdout)")

    p = sub.add_parser("simulate", parents=[common], help="sample fBm paths on a grid")
    p.add_argument("--hurst", type=float, required=True)
    p.add_argument("--order", "-L", type=_positive_int, default=64)
    p.add_argument("--paths", type=_nonneg_int, default=1)
    p.add_argument("--grid", default="1000", help="point count (uniform, endpoints included) or comma list")
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--mode", choices=("strong", "weak", "liouville"), default="strong")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("errors", parents=[common], help="covariance approximation errors")
    p.add_argument("--hurst", dest="hurst_list", required=True, help="list 0.1,0.5 or range 0.1:0.9:0.1")
    p.add_argument("--orders", default="4,8,16,32,64,128,256")
    p.add_argument("--paper-check", action="store_true",
                   help="exit nonzero if any cell deviates from the published tables by more than 1.5e-6")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.set_defaults(func=cmd_errors)

    p = sub.add_parser("operator", parents=[common], help="dump an operator or covariance matrix")
    p.add_argument("selector", help="mult:A, int-left:B, int-right:B, inversion, kernel:H, covariance:H, cholesky:H")
    p.add_argument("--order", "-L", type=_positive_int, default=64)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_operator)

    p = sub.add_parser("basis", parents=[common], help="sample the Legendre basis on a grid")
    p.add_argument("--order", "-L", type=_positive_int, default=64)
    p.add_argument("--grid", default="1000")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_basis)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpectralError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out is None:
        sys.stdout.write(text)
        return status
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"{parser.prog}: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_FAILURE
    return status


if __name__ == "__main__":
    sys.exit(main())
