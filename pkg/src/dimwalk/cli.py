"""Command line interface: project, walk, check, eval.

Exit codes: 0 success / check passed, 1 check failed, 2 usage or domain
error, 3 the run completed but the resulting series is not membership-valid.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize, walks
from .catalogue import parse_function
from .errors import DocumentError, DomainError, MembershipError, OrderError
from .gegenbauer import GegenbauerBasis, default_nodes
from .pdcheck import DEFAULT_EPS, DEFAULT_TMAX, certify
from .series import (
    PowerSeries,
    SpatialSeries,
    SpatioTemporalSeries,
    evaluate,
    is_temporal,
    project,
    validate,
)
from .temporal import TemporalPD

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(v: float) -> str:
    return repr(float(v))


def cmd_project(args) -> int:
    try:
        f = parse_function(args.function)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.dim < 1 or args.order < 0:
        raise UsageError("--dim must be >= 1 and --order >= 0")
    basis = GegenbauerBasis.for_sphere(args.dim)
    m = args.quad if args.quad is not None else default_nodes(args.order)
    if m < 1:
        raise UsageError("--quad must be >= 1")
    s = project(f, basis, args.order, m)
    verdict = validate(s)
    prov = [{"op": "project", "function": args.function, "order": args.order, "nodes": m}]
    if args.out:
        serialize.write(args.out, s, prov)
    print(f"# lambda={basis.lam!r} dimension={args.dim} nodes={m}")
    print("n,a_n")
    for n, a in enumerate(s.coeffs):
        print(f"{n},{_fmt(a)}")
    print(f"# verdict={verdict.status} mass={_fmt(verdict.mass)}" + (f" ({verdict.reason})" if verdict.reason else ""))
    return EXIT_OK if verdict.valid else EXIT_INVALID


def cmd_walk(args) -> int:
    series, prov = serialize.read(args.input)
    try:
        result = walks.walk(series, args.op, args.steps)
    except walks.WalkError as exc:
        raise UsageError(str(exc)) from exc
    out = result.series if args.raw else result.completed
    log = list(prov) + list(result.provenance)
    serialize.write(args.out, out, log)
    for entry in result.provenance:
        print(json.dumps(entry, sort_keys=True))
        for c in entry.get("caveats", []):
            print(f"warning: {c}", file=sys.stderr)
    verdict = validate(out)
    return EXIT_OK if verdict.valid or args.raw else EXIT_INVALID


def _as_temporal(s: SpatialSeries) -> SpatioTemporalSeries:
    return SpatioTemporalSeries(s.basis, [TemporalPD.constant(float(a)) for a in s.coeffs])


def cmd_check(args) -> int:
    series, _ = serialize.read(args.input)
    if not isinstance(series, PowerSeries):
        if args.dim is not None and (args.dim - 1) / 2 != series.basis.lam:
            raise UsageError(f"--dim {args.dim} does not match lambda={series.basis.lam}")
        if args.dim is None and (2 * series.basis.lam + 1) % 1:
            raise UsageError("order is not tied to an integer sphere dimension; pass --dim")
    if args.temporal and isinstance(series, SpatialSeries):
        series = _as_temporal(series)
    if args.trials < 1 or args.points < 2:
        raise UsageError("--trials must be >= 1 and --points >= 2")
    report = certify(series, trials=args.trials, points=args.points, seed=args.seed,
                     eps=args.eps, dimension=args.dim, tmax=args.tmax)
    print(json.dumps(report.to_dict(), sort_keys=True))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_eval(args) -> int:
    series, _ = serialize.read(args.input)
    temporal = is_temporal(series)
    if args.grid:
        parts = [p for p in args.grid.split(",") if p.strip()]
        try:
            sizes = [int(p) for p in parts]
        except ValueError as exc:
            raise UsageError(f"bad --grid {args.grid!r}") from exc
        if not 1 <= len(sizes) <= 2 or min(sizes) < 1:
            raise UsageError("--grid expects nx or nx,nt with positive sizes")
        xs = np.linspace(-1.0, 1.0, sizes[0]) if sizes[0] > 1 else np.array([1.0])
        if len(sizes) == 2:
            if not temporal:
                raise UsageError("a time grid needs a spatio-temporal series")
            ts = np.linspace(-args.tmax, args.tmax, sizes[1]) if sizes[1] > 1 else np.array([0.0])
            print("x,t,f")
            for x in xs:
                vals = evaluate(series, np.full(ts.size, x), ts)
                for t, v in zip(ts, vals):
                    print(f"{_fmt(x)},{_fmt(t)},{_fmt(v)}")
        else:
            vals = evaluate(series, xs, args.t) if temporal else evaluate(series, xs)
            print("x,f")
            for x, v in zip(xs, vals):
                print(f"{_fmt(x)},{_fmt(v)}")
        return EXIT_OK
    if args.x is None:
        raise UsageError("eval needs --x or --grid")
    value = evaluate(series, args.x, args.t) if temporal else evaluate(series, args.x)
    print(_fmt(value))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a builtin function onto a Gegenbauer basis")
    p.add_argument("--function", required=True, help="e.g. multiquadric:delta=0.3,tau=1, wendland:c=1, poly:0,0,1")
    p.add_argument("--dim", type=int, required=True, help="sphere dimension d (lambda = (d-1)/2)")
    p.add_argument("--order", type=int, default=20, help="truncation order N")
    p.add_argument("--quad", type=int, default=None, help="quadrature nodes (default 2N+16)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("walk", help="apply a dimension walk to a series document")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--op", required=True, choices=sorted(walks.OPERATIONS))
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--raw", action="store_true", help="write the exact image without the added constant")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("check", help="empirical positive definiteness certificate")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--points", type=int, default=60)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--temporal", action="store_true", help="draw times as well (implied for temporal series)")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--tmax", type=float, default=DEFAULT_TMAX)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate a series at a point or on a grid")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--grid", default=None, help="nx or nx,nt")
    p.add_argument("--tmax", type=float, default=DEFAULT_TMAX)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DocumentError, DomainError, OrderError, MembershipError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
