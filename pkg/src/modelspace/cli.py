"""Command-line interface.

Subcommands: diagnose, transform, interpolate, classify, experiment.
Zero and value sequences travel as JSON files; boundary samples as CSV
rows t, re, im.  See the README for examples.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import blaschke, experiments
from .blaschke import BlaschkeProduct, eval_product
from .boundary import BoundaryFunction, BoundaryGrid, membership_defect, write_csv
from .classify import classify_trace
from .core import SmoothnessDescriptor, ValueSequence, ZeroSequence, generate_sequence
from .interp import conjugate_sequence, kernel_interpolant, lagrange_interpolant


def _dump(data: dict, path: str | None) -> None:
    text = json.dumps(data, indent=2)
    if path is None:
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _load_zeros(args) -> ZeroSequence:
    if args.zeros is not None:
        return ZeroSequence.from_json(args.zeros)
    if args.radial_q is not None:
        kind = "rotated_radial" if args.angle_step else "radial_geometric"
        params = {"q": args.radial_q, "n": args.n}
        if args.angle_step:
            params["angle_step"] = args.angle_step
        return generate_sequence(kind, **params)
    raise SystemExit("provide --zeros FILE or --radial-q Q with --n N")


def _add_zero_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--zeros", help="ZeroSequence JSON file")
    parser.add_argument("--radial-q", type=float, dest="radial_q",
                        help="generate a radial sequence 1 - q**k instead")
    parser.add_argument("--n", type=int, default=8, help="generated sequence length")
    parser.add_argument("--angle-step", type=float, dest="angle_step", default=0.0,
                        help="rotation per index for generated sequences")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="modelspace",
        description="Blaschke products, boundary projections and trace classifiers",
    )
    parser.add_argument("--grid-log2", type=int, default=12, dest="grid_log2",
                        help="log2 of the boundary grid size (default 12)")
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="reporting tolerance carried into outputs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagnose", help="product diagnostics for a zero sequence")
    _add_zero_source(p)
    p.add_argument("--out", help="output JSON path (default stdout)")

    p = sub.add_parser("transform", help="conjugate sequence of trace values")
    _add_zero_source(p)
    p.add_argument("--values", required=True, help="ValueSequence JSON file")
    p.add_argument("--out", help="output JSON path (default stdout)")

    p = sub.add_parser("interpolate", help="model-space interpolant of trace values")
    _add_zero_source(p)
    p.add_argument("--values", required=True, help="ValueSequence JSON file")
    p.add_argument("--form", choices=["lagrange", "kernel"], default="lagrange")
    p.add_argument("--boundary-csv", dest="boundary_csv",
                   help="also write boundary samples to this CSV")
    p.add_argument("--out", help="output JSON path (default stdout)")

    p = sub.add_parser("classify", help="trace smoothness classification")
    _add_zero_source(p)
    p.add_argument("--values", required=True, help="ValueSequence JSON file")
    p.add_argument("--class", required=True, dest="klass",
                   choices=["lipschitz", "bmo", "gevrey", "sobolev"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--out", help="output JSON path (default stdout)")

    p = sub.add_parser("experiment", help="run one of the named pipelines")
    _add_zero_source(p)
    p.add_argument("--name", required=True,
                   choices=["nonduality", "noninterpolation", "dichotomy", "sublevel"])
    p.add_argument("--values", help="ValueSequence JSON (dichotomy only)")
    p.add_argument("--epsilon", type=float, default=0.5, help="sublevel threshold")
    p.add_argument("--density", type=int, default=48, help="radial lattice density")
    p.add_argument("--out", help="output JSON path (default stdout)")
    p.add_argument("--csv", help="flat CSV of all series")

    args = parser.parse_args(argv)

    if args.command == "diagnose":
        zeros = _load_zeros(args)
        report = blaschke.diagnose(zeros, grid_size=1 << args.grid_log2)
        _dump(report.to_dict(), args.out)
        return 0

    if args.command == "transform":
        zeros = _load_zeros(args)
        values = ValueSequence.from_json(args.values)
        _dump(conjugate_sequence(zeros, values).to_dict(), args.out)
        return 0

    if args.command == "interpolate":
        zeros = _load_zeros(args)
        values = ValueSequence.from_json(args.values)
        if args.form == "kernel":
            interp = kernel_interpolant(zeros, values)
        else:
            interp = lagrange_interpolant(zeros, values)
        grid = BoundaryGrid(args.grid_log2)
        sampled = interp.sample(grid)
        if args.boundary_csv:
            write_csv(sampled, args.boundary_csv)
        out = interp.to_dict()
        theta = BoundaryFunction.from_callable(
            grid, lambda z: eval_product(BlaschkeProduct(zeros), z)
        )
        defect = membership_defect(sampled, "K2", theta)
        out["membership_defect"] = defect
        out["within_tolerance"] = bool(defect <= args.tol)
        _dump(out, args.out)
        return 0

    if args.command == "classify":
        zeros = _load_zeros(args)
        values = ValueSequence.from_json(args.values)
        if args.klass in ("lipschitz", "gevrey"):
            if args.alpha is None:
                raise SystemExit(f"--class {args.klass} requires --alpha")
            desc = SmoothnessDescriptor(args.klass, alpha=args.alpha)
        elif args.klass == "sobolev":
            if args.p is None or args.s is None:
                raise SystemExit("--class sobolev requires --p and --s")
            desc = SmoothnessDescriptor.sobolev(args.p, args.s)
        else:
            desc = SmoothnessDescriptor.bmo()
        _dump(classify_trace(zeros, values, desc).to_dict(), args.out)
        return 0

    # experiment
    zeros = _load_zeros(args)
    if args.name == "nonduality":
        result = experiments.exp_nonduality(zeros, m=args.grid_log2)
    elif args.name == "noninterpolation":
        result = experiments.exp_noninterpolation(zeros, m=args.grid_log2)
    elif args.name == "dichotomy":
        if args.values is None:
            values = ValueSequence(np.ones(len(zeros)))
        else:
            values = ValueSequence.from_json(args.values)
        result = experiments.exp_dichotomy(zeros, values, m=args.grid_log2)
    else:  # sublevel
        grid = BoundaryGrid(args.grid_log2)
        points = zeros.points
        kernel = BoundaryFunction(
            grid,
            (1.0 / (1.0 - np.conj(points)[None, :] * grid.nodes[:, None])).sum(axis=1)
            / len(zeros),
        )
        result = experiments.exp_sublevel(
            zeros, kernel, eps=args.epsilon, n_radial=args.density
        )
    result.parameters["tol"] = args.tol
    if args.csv:
        result.write_csv(args.csv)
    _dump(result.to_dict(), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
