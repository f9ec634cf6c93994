"""Command-line interface.

Exit status is 0 on success, 1 when a mathematical precondition fails
(disconnected graph, frame size out of range, ...) and 2 on input/parse
errors. Diagnostics are written to stderr as a single line.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import complete as kn
from . import feasibility as fe
from . import graph as gr
from . import uncertainty as un
from .errors import DomainError, GraphError
from .transforms import (GraphBasis, difference, gft, ngft, normalized_difference,
                         read_signal)

DUC_COLUMNS = ("alpha", "x", "y", "m", "mult", "h_minus", "h_plus")


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _add_source(p):
    src = p.add_argument_group("graph source (exactly one)").add_mutually_exclusive_group(required=True)
    src.add_argument("--input", "-i", metavar="PATH", help="edge-list file ('u v [w]' per line)")
    src.add_argument("--complete", type=int, metavar="N", help="complete graph K_N")
    src.add_argument("--cycle", type=int, metavar="N", help="unit cycle C_N")
    src.add_argument("--path", type=int, metavar="N", help="unit path P_N")


def _add_format(p):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.set_defaults(format="json")


def _add_solver(p):
    p.add_argument("--mult-tol", type=_positive_float, help="eigenvalue clustering tolerance")
    p.add_argument("--x-tol", type=_positive_float, help="tolerance on <g, Lambda g> targets")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graph-uncertainty", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectra", help="Laplacian, normalized and modified spectra")
    _add_source(p)

    p = sub.add_parser("bounds", help="sharp additive uncertainty bounds")
    _add_source(p)
    p.add_argument("--normalized", action="store_true")

    p = sub.add_parser("frame-bounds", help="frame uncertainty bounds for d x N Parseval frames")
    _add_source(p)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--normalized", action="store_true")

    p = sub.add_parser("duc", help="trace the differential uncertainty curve")
    _add_source(p)
    _add_format(p)
    _add_solver(p)
    p.add_argument("--points", type=_positive_int, default=100)
    p.add_argument("--upper", action="store_true", help="trace the upper boundary instead")

    p = sub.add_parser("region", help="feasibility region: boundary and witness cloud")
    _add_source(p)
    _add_format(p)
    _add_solver(p)
    p.add_argument("--points", type=_positive_int, default=32)
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("kn", help="complete-graph closed forms")
    p.add_argument("what", choices=("duc", "bounds", "eigen"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--points", type=_positive_int, default=100)
    p.add_argument("-d", type=int, help="frame dimension for 'bounds'")

    p = sub.add_parser("transform", help="graph Fourier transforms and difference energies of a signal")
    _add_source(p)
    p.add_argument("--signal", required=True, metavar="PATH", help="one value per line")
    return parser


def load_graph(args) -> gr.Graph:
    if args.input is not None:
        with open(args.input) as fh:
            return gr.graph_from_edge_list(fh.read())
    if args.complete is not None:
        return gr.complete_graph(args.complete)
    if args.cycle is not None:
        return gr.cycle_graph(args.cycle)
    return gr.path_graph(args.path)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("UNC_THREADS", "1")))
    except ValueError:
        return 1


def _floats(a):
    return [float(v) for v in np.ravel(a)]


def _sample_dict(s: fe.DucSample):
    return dict(zip(DUC_COLUMNS, s.row()))


def _csv_cell(v):
    return "" if v is None else repr(v) if isinstance(v, float) else str(v)


def _write_csv(out, header, rows):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_csv_cell(v) for v in row) + "\n")


def _curve_json(c: fe.UncertaintyCurve):
    return {
        "side": c.side,
        "lambda_max": c.lambda_max,
        "axis_low": list(c.axis_low),
        "axis_left": list(c.axis_left),
        "left_end": _sample_dict(c.left_end),
        "right_end": _sample_dict(c.right_end),
        "alpha0": _sample_dict(c.alpha0),
        "samples": [_sample_dict(s) for s in c.samples],
    }


def _config(args):
    return fe.SolverConfig(mult_tol=args.mult_tol, x_tol=args.x_tol)


def _cmd_spectra(args, out):
    b = GraphBasis(load_graph(args))
    return {
        "n": b.n,
        "laplacian": _floats(b.lambdas),
        "normalized": _floats(b.mus),
        "modified": _floats(un.modified_spectrum(b).values),
        "normalized_modified": _floats(un.modified_spectrum(b, normalized=True).values),
    }


def _cmd_bounds(args, out):
    b = GraphBasis(load_graph(args))
    res = un.additive_bounds(b, args.normalized)
    return {"lower": res.lower, "upper": res.upper, "spectrum": _floats(res.modified_spectrum.values)}


def _cmd_frame_bounds(args, out):
    b = GraphBasis(load_graph(args))
    lower, upper = un.frame_bounds(b, args.d, args.normalized)
    spec = un.modified_spectrum(b, args.normalized)
    return {"d": args.d, "lower": lower, "upper": upper, "spectrum": _floats(spec.values)}


def _cmd_duc(args, out):
    b = GraphBasis(load_graph(args))
    side = fe.UPPER if args.upper else fe.LOWER
    curve = fe.duc_curve(b, args.points, _config(args), _threads(), side)
    if args.format == "csv":
        _write_csv(out, DUC_COLUMNS, (s.row() for s in curve.samples))
        return None
    res = _curve_json(curve)
    if args.upper:
        res["method"] = fe.UPPER_METHOD
    return res


def _cmd_region(args, out):
    b = GraphBasis(load_graph(args))
    r = fe.feasibility_region(b, args.points, args.samples, args.seed, _config(args), _threads())
    anchors = [r.lower.axis_low, r.lower.axis_left]
    if args.format == "csv":
        rows = []
        if r.hull is None:
            center = r.lambda_max / 2
            for x, y in r.boundary:
                kind = "lower" if y <= center else "upper"
                rows.append((None, float(x), float(y), None, None, None, None, kind))
        for kind, samples in (("lower", r.lower_boundary), ("upper", r.upper_boundary)):
            rows.extend(s.row() + (kind,) for s in samples)
        rows.extend((None, float(x), float(y), None, None, None, None, "witness") for x, y in r.witnesses)
        rows.extend((None, float(x), float(y), None, None, None, None, "anchor") for x, y in anchors)
        _write_csv(out, DUC_COLUMNS + ("kind",), rows)
        return None
    return {
        "lambda_max": r.lambda_max,
        "min_sum_bound": r.min_sum_bound,
        "metadata": r.metadata,
        "anchors": [list(a) for a in anchors],
        "lower": _curve_json(r.lower),
        "upper": _curve_json(r.upper) if r.upper is not None else None,
        "boundary": [_floats(p) for p in r.boundary],
        "witnesses": [_floats(p) for p in r.witnesses],
    }


def _cmd_kn(args, out):
    n = args.n
    if args.what == "bounds":
        res = kn.kn_bounds(n)
        body = {"n": n, "additive": list(res.additive)}
        ds = [args.d] if args.d is not None else range(2, n + 1)
        body["frame_lower"] = {str(d): res.frame_lower(d) for d in ds}
        return body
    if args.what == "eigen":
        if args.alpha is None:
            raise DomainError("kn eigen needs --alpha")
        es = kn.kn_eigenstructure(n, args.alpha)
        return {"n": n, "alpha": args.alpha, "middle_eigenvalue": es.middle_eigenvalue,
                "middle_multiplicity": es.middle_multiplicity, "outliers": list(es.outliers),
                "lambda_min": es.lambda_min}
    if args.alpha is not None:
        x, y = kn.kn_duc_point(n, args.alpha)
        return {"n": n, "alpha": args.alpha, "x_of_alpha": kn.kn_x_of_alpha(n, args.alpha),
                "lambda_min": kn.kn_lambda_min(n, args.alpha), "x": x, "y": y}
    xs = fe.x_targets(float(n), args.points)
    return {"n": n, "points": [[float(x), kn.kn_omega(n, float(x))] for x in xs]}


def _cmd_transform(args, out):
    b = GraphBasis(load_graph(args))
    f = read_signal(args.signal)
    if f.shape != (b.n,):
        raise GraphError(f"signal has {f.shape[0]} values, graph has {b.n} vertices")
    fhat, fstar = gft(b, f), ngft(b, f)
    return {
        "gft": _floats(fhat),
        "ngft": _floats(fstar),
        "difference": _floats(difference(b, f)),
        "normalized_difference": _floats(normalized_difference(b, f)),
        "additive_functional": un.additive_functional(b, f),
        "normalized_additive_functional": un.additive_functional(b, f, normalized=True),
    }


COMMANDS = {
    "spectra": _cmd_spectra,
    "bounds": _cmd_bounds,
    "frame-bounds": _cmd_frame_bounds,
    "duc": _cmd_duc,
    "region": _cmd_region,
    "kn": _cmd_kn,
    "transform": _cmd_transform,
}


def run(args, out) -> int:
    """Execute a parsed command, writing the result to ``out``; returns the exit code."""
    buf = io.StringIO()
    try:
        result = COMMANDS[args.command](args, buf)
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # DomainError subclasses ValueError; other ValueErrors come from parsing input files
        code = 1 if isinstance(exc, DomainError) else 2
        print(f"error: {exc}", file=sys.stderr)
        return code
    if result is not None:
        buf.write(json.dumps(result, allow_nan=False) + "\n")
    out.write(buf.getvalue())
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
