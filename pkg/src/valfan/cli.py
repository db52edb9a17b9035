"""Command-line front end.

Exit status: 0 on success, 1 when the cycle configuration is malformed or
invalid (violations go to stderr), 2 on bad parameters.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import blowup, degeneration, serialize, specialness, svg
from .cycle import ConfigError, load_config, parse_point
from .lattice import NotInRange, SurfaceLattice, unicuspidal_witness


class ParamError(ValueError):
    pass


def _ints(text: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError as exc:
        raise ParamError(f"expected comma-separated integers, got {text!r}") from exc
    if n is not None and len(vals) != n:
        raise ParamError(f"expected {n} integers, got {text!r}")
    return vals


def _generators(text: str) -> list[tuple[int, int, int]]:
    out = []
    for chunk in text.split(";"):
        if chunk.strip():
            out.append(tuple(_ints(chunk, 3)))
    return out


def _point(config, args):
    try:
        return parse_point(config, node=args.node, t=args.t, vertex=args.vertex)
    except (ValueError, IndexError) as exc:
        raise ParamError(str(exc)) from exc


def cmd_classify(args):
    config = load_config(args.config)
    v = specialness.classify(config, _point(config, args))
    return serialize.verdict_json(v, args.approx), None


def cmd_partition(args):
    config = load_config(args.config)
    P = specialness.partition(config, args.height)
    fig = svg.partition_svg(config, P) if args.svg else None
    return serialize.partition_json(P, args.approx), fig


def cmd_witnesses(args):
    if args.config:
        config = load_config(args.config)
        nef, pmap = specialness.contract_non_nef(config)
        nodes = [args.node] if args.node is not None else range(nef.k)
        sets = [serialize.witness_set_json(specialness.witness_set(nef, n, args.height)) for n in nodes]
        return {"surface": config.surface.name, "contracted_components": pmap.contracted_components,
                "witness_sets": sets}, None
    if args.surface is None or args.pq is None:
        raise ParamError("witnesses needs --config, or --surface together with --pq")
    S = SurfaceLattice.parse(args.surface)
    p, q = _ints(args.pq, 2)
    try:
        L = unicuspidal_witness(S, p, q, bound=args.bound)
    except NotInRange as exc:
        return {"p": p, "q": q, "in_range": False, "reason": str(exc)}, None
    return {"p": p, "q": q, "in_range": True, "L": None if L is None else L.to_json()}, None


def cmd_polytope(args):
    P = degeneration.polytope(args.k)
    lo, hi = degeneration.chamber_endpoints(args.k)
    out = {"k": args.k, "chamber": [str(lo), str(hi)], "vertices": P.to_json(),
           "area2": str(degeneration.area2(P)), "denominator": P.denominator}
    if args.check_ehrhart is not None:
        rep = degeneration.ehrhart_report(args.k, args.check_ehrhart)
        out["ehrhart"] = rep
        out["all_match"] = all(r["match"] for r in rep)
    fig = svg.polygon_svg(P) if args.svg else None
    return out, fig


def cmd_hilbert(args):
    if args.generators:
        M = degeneration.MonoidPresentation(tuple(_generators(args.generators)))
        source = "generators"
    elif args.polytope_k is not None:
        P = degeneration.polytope(args.polytope_k)
        M = degeneration.semigroup_generators(P, args.degree)
        source = f"polytope {args.polytope_k}"
    else:
        raise ParamError("hilbert needs --generators or --polytope-k")
    pieces = degeneration.graded_pieces(M, args.max_m)
    return {"source": source, "generators": [list(g) for g in M.generators],
            "hilbert": [len(s) for s in pieces]}, None


def cmd_intersections(args):
    if args.colength:
        p, q = _ints(args.colength, 2)
        return {"p": p, "q": q, "colength": blowup.colength(p, q),
                "brute_count": blowup.colength_by_count(p, q), "et_self": str(blowup.et_self(p, q))}, None
    if args.pair:
        p1, q1, p2, q2 = _ints(args.pair, 4)
        e1, e2, e12 = blowup.pair_intersections(p1, q1, p2, q2)
        return {"E1^2": str(e1), "E2^2": str(e2), "E1.E2": str(e12)}, None
    if not args.config:
        raise ParamError("intersections needs --config with a point, --pair or --colength")
    config = load_config(args.config)
    pt = _point(config, args)
    M = blowup.transform_matrix(config, pt)
    return {"point": serialize.point_json(pt, args.approx), "matrix": serialize.matrix_json(M)}, None


def cmd_validate_example(args):
    rec = degeneration.wps_ci_record(args.k)
    rep = degeneration.validate_homogeneity(rec)
    return {"record": rec.to_json(), "report": rep.to_json(),
            "status": "homogeneous" if rep.all_homogeneous else "mismatch flagged"}, None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="valfan", description="Special valuations on del Pezzo surfaces with nodal anticanonical cycles.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, config=False, point=False):
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        p.add_argument("--approx", action="store_true", help="add floating approximations of weights")
        if config:
            p.add_argument("--config", help="cycle configuration JSON")
        if point:
            p.add_argument("--node", type=int)
            p.add_argument("--t", help="weight, e.g. 1/6, 3 - 2*sqrt(2), 0 or inf")
            p.add_argument("--vertex", type=int)

    p = sub.add_parser("classify", help="decide specialness at a circle point")
    common(p, config=True, point=True)
    p.set_defaults(func=cmd_classify, needs_config=True)

    p = sub.add_parser("partition", help="chamber decomposition of the special locus")
    common(p, config=True)
    p.add_argument("--height", type=int, default=30)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_partition, needs_config=True)

    p = sub.add_parser("witnesses", help="unicuspidal witness classes")
    common(p, config=True)
    p.add_argument("--node", type=int)
    p.add_argument("--height", type=int, default=30)
    p.add_argument("--surface", help="lattice kind, e.g. blowup:1 or quadric")
    p.add_argument("--pq", help="a single pair p,q")
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_witnesses)

    p = sub.add_parser("polytope", help="moment polygon of a degree-8 chamber")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check-ehrhart", type=int, metavar="M")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("hilbert", help="Hilbert function of a graded monoid")
    common(p)
    p.add_argument("--generators", help="semicolon-separated triples i,j,m")
    p.add_argument("--polytope-k", type=int)
    p.add_argument("--degree", type=int, default=1, help="generator degree cap for --polytope-k")
    p.add_argument("--max-m", type=int, default=10)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("intersections", help="blow-up intersection numbers")
    common(p, config=True, point=True)
    p.add_argument("--pair", help="p1,q1,p2,q2")
    p.add_argument("--colength", help="p,q")
    p.set_defaults(func=cmd_intersections)

    p = sub.add_parser("validate-example", help="weighted homogeneity of a boundary complete intersection")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_validate_example)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "needs_config", False) and not args.config:
        print("error: --config is required", file=sys.stderr)
        return 2
    try:
        result, figure = args.func(args)
    except ConfigError as exc:
        for v in exc.violations:
            print(f"violation: {v}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1 if getattr(args, "config", None) else 2
    except (ParamError, ValueError, IndexError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if figure is not None:
        with open(args.svg, "w") as fh:
            fh.write(figure)
    return 0


if __name__ == "__main__":
    sys.exit(main())
