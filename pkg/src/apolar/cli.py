"""Command-line interface: parse polynomials, run the certified computations,
emit a machine-readable JSON report.

Exit codes: 0 success, 1 certificate failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .apolarity import ann_slice, catalecticant, concise_dim, hilbert_function
from .ideals import macaulay_bound
from .parsing import ParseError, parse_poly
from .poly import Poly
from .ranks import aggregate, catalecticant_deduction, quadric_rank, sylvester_binary
from .wildcert import (
    cactus_lower_via_slice,
    extract_square_pairs,
    rank9_lower_cert,
    tangent_data_for_pairs,
    theorem2_report,
)
from .witness import direct_sum_extend, double_point_span, tangent_limit_family, verify_limit


class InputError(ValueError):
    pass


class CertFailure(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x)


def _parse_input_poly(args, attr="poly", require_homogeneous=True) -> Poly:
    text = getattr(args, attr.replace("-", "_"), None)
    if not text:
        raise InputError(f"--{attr} is required for this command")
    vars_ = args.vars.split(",") if args.vars else None
    duals = args.dual_names.split(",") if args.dual_names else None
    try:
        p = parse_poly(text, vars=vars_, dual_names=duals)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    if p.is_zero():
        raise InputError("the zero polynomial is not a valid input here")
    if require_homogeneous and not p.is_homogeneous():
        raise InputError("rank computations need a homogeneous polynomial")
    return p


def _cert_dicts(records) -> list:
    return [
        {"kind": c.kind, "verified": c.verified, "stage_log": list(c.stage_log)}
        for c in records
    ]


def _cmd_hilbert(args):
    p = _parse_input_poly(args)
    h = hilbert_function(p)
    return {"hilbert": list(h.values), "degree": h.top_degree}, [], True


def _cmd_annihilator(args):
    p = _parse_input_poly(args)
    if args.degree is None:
        raise InputError("--degree is required")
    sl = ann_slice(p, args.degree)
    return {
        "degree": sl.degree,
        "dimension": sl.dim,
        "basis": [str(b) for b in sl.basis],
    }, [], True


def _cmd_catalecticant(args):
    p = _parse_input_poly(args)
    if args.degree is None:
        raise InputError("--degree is required")
    cat = catalecticant(p, args.degree)
    m = cat.matrix
    return {
        "source_degree": cat.source_degree,
        "rank": m.rank(),
        "rows": m.nrows,
        "cols": m.ncols,
        "row_labels": list(m.row_labels),
        "col_labels": list(m.col_labels),
        "entries": [[_frac(c) for c in row] for row in m.entries],
    }, [], True


def _cmd_concise(args):
    p = _parse_input_poly(args)
    es = concise_dim(p)
    return {"dimension": es.dim, "basis": [str(b) for b in es.basis]}, [], True


def _cmd_macaulay(args):
    if args.dim is None or args.degree is None:
        raise InputError("--dim and --degree are required")
    try:
        bound = macaulay_bound(args.dim, args.degree)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"dim": args.dim, "degree": args.degree, "bound": bound}, [], True


def _cmd_sylvester(args):
    p = _parse_input_poly(args)
    try:
        res = sylvester_binary(p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {
        "d1": res.d1,
        "d2": res.d2,
        "border": res.border,
        "rank": res.rank,
        "smoothable": res.border,
        "cactus": res.border,
    }, [], True


def _cmd_rank_bounds(args):
    p = _parse_input_poly(args)
    d = p.homogeneous_degree()
    es = concise_dim(p)
    if d == 2:
        q = quadric_rank(p)
        bounds = {n: {"lower": q, "upper": q, "exact": q}
                  for n in ("border", "smoothable", "cactus", "rank")}
    elif es.dim <= 2:
        bounds = sylvester_binary(p).report.as_dict()
    else:
        bounds = aggregate(p, [catalecticant_deduction(p)]).as_dict()
    return {"bounds": bounds, "conciseness": es.dim}, [], True


def _cmd_witness_verify(args):
    p = _parse_input_poly(args)
    es = concise_dim(p)
    g = es.reduced if es.dim != p.table.n else p
    pairs = extract_square_pairs(g)
    if not pairs:
        return {"verified": False, "reason": "no squares-times-lines shape found"}, [
            {"kind": "border-limit-family", "verified": False,
             "stage_log": ["shape extraction failed"]}
        ], False
    try:
        data = tangent_data_for_pairs(pairs)
    except ValueError as exc:
        return {"verified": False, "reason": str(exc)}, [
            {"kind": "border-limit-family", "verified": False, "stage_log": [str(exc)]}
        ], False
    fam = tangent_limit_family(data, 3)
    k = args.k if args.k is not None else 1
    ok = verify_limit(fam.family, k, g) and fam.limit == g
    cert = {
        "kind": "border-limit-family",
        "verified": ok,
        "stage_log": [
            f"{fam.r} perturbed cubes, constant term cancels",
            f"t^{k} coefficient equals the target: {ok}",
        ],
    }
    return {"verified": ok, "r": fam.r, "k": k, "border_upper": fam.r if ok else None}, [cert], ok


def _parse_pairs(args, table):
    if not args.pairs:
        raise InputError("--pairs is required, e.g. \"x0,y0;x0+x1,-1*y1;x1,y2\"")
    pairs = []
    for chunk in args.pairs.split(";"):
        sides = chunk.split(",")
        if len(sides) != 2:
            raise InputError(f"bad pair {chunk!r}: expected \"l,m\"")
        try:
            l = parse_poly(sides[0].strip(), table=table)
            m = parse_poly(sides[1].strip(), table=table)
        except ParseError as exc:
            raise InputError(str(exc)) from exc
        pairs.append((l, m))
    return pairs


def _cmd_double_points(args):
    p = _parse_input_poly(args)
    pairs = _parse_pairs(args, p.table)
    cert = double_point_span(p, pairs)
    if cert is None:
        return {"verified": False}, [
            {"kind": "double-point-span", "verified": False,
             "stage_log": ["no exact solution in the span of the given 2-jets"]}
        ], False
    return {
        "verified": True,
        "cactus_upper": cert.cactus_upper,
        "point_coeffs": [_frac(c) for c in cert.point_coeffs],
        "jet_coeffs": [_frac(c) for c in cert.jet_coeffs],
        "curvilinear": cert.curvilinear,
    }, [
        {"kind": "double-point-span", "verified": True,
         "stage_log": [f"solved exactly; cactus <= {cert.cactus_upper}"]}
    ], True


def _cmd_wild_cert(args):
    p = _parse_input_poly(args)
    es = concise_dim(p)
    g = es.reduced if es.dim != p.table.n else p
    certs = []
    results = {}
    ok = True
    try:
        csl = cactus_lower_via_slice(g)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if csl is None:
        results["cactus_lower"] = None
        certs.append({"kind": "cactus-slice-saturation", "verified": False,
                      "stage_log": ["the slice-saturation pattern found no linear drop"]})
        ok = False
    else:
        results["cactus_lower"] = csl.bound
        certs.append({"kind": "cactus-slice-saturation", "verified": True,
                      "stage_log": list(csl.stage_log())})
    r9 = rank9_lower_cert(g, r_max=args.rmax)
    certs.append({"kind": "rank-lower-counting", "verified": r9.verified,
                  "stage_log": list(r9.stage_log())})
    results["rank_lower"] = r9.bound
    results["rmax"] = r9.r_max
    ok = ok and r9.verified
    return results, certs, ok


def _cmd_theorem2(args):
    p = _parse_input_poly(args)
    rep = theorem2_report(p, r_max=args.rmax)
    results = {
        "final": rep.final(),
        "bounds": rep.report.as_dict(),
        "conciseness": rep.conciseness,
        "hilbert": list(rep.hilbert),
        "slice2_dim": rep.slice2_dim,
        "saturation_gammas": list(rep.saturation_gammas),
        "border_witness_rank": rep.border_witness_rank,
        "notes": list(rep.notes),
    }
    return results, _cert_dicts(rep.certificates), True


def _cmd_direct_sum(args):
    p = _parse_input_poly(args)
    if not args.poly2:
        raise InputError("--poly2 is required for direct-sum")
    vars2 = args.vars2.split(",") if args.vars2 else None
    try:
        q = parse_poly(args.poly2, vars=vars2)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    if not q.is_homogeneous() or q.is_zero():
        raise InputError("--poly2 must be homogeneous and nonzero")
    try:
        rep = direct_sum_extend(p, q, run_pipeline=True)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    pipeline = rep.pipeline
    results = {
        "conciseness": {
            "left": rep.concise_left,
            "right": rep.concise_right,
            "total": rep.concise_total,
        },
        "slice_intersection_equal": rep.slice_intersection_equal,
        "final": pipeline.final() if pipeline else None,
    }
    certs = [{
        "kind": "direct-sum-slice-intersection",
        "verified": rep.slice_intersection_equal,
        "stage_log": ["degree-2 slice equals the intersection of the summand slices: "
                      + str(rep.slice_intersection_equal)],
    }]
    if pipeline:
        certs += _cert_dicts(pipeline.certificates)
    return results, certs, rep.slice_intersection_equal


_COMMANDS = {
    "hilbert": _cmd_hilbert,
    "annihilator": _cmd_annihilator,
    "catalecticant": _cmd_catalecticant,
    "concise": _cmd_concise,
    "macaulay": _cmd_macaulay,
    "sylvester": _cmd_sylvester,
    "rank-bounds": _cmd_rank_bounds,
    "witness-verify": _cmd_witness_verify,
    "double-points": _cmd_double_points,
    "wild-cert": _cmd_wild_cert,
    "theorem2": _cmd_theorem2,
    "direct-sum": _cmd_direct_sum,
}


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="apolar",
        description="exact apolarity computations and certified rank bounds",
    )
    sub = top.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--poly", help="polynomial expression")
        sp.add_argument("--vars", help="comma-separated variable order")
        sp.add_argument("--degree", type=int, help="slice degree / growth degree")
        sp.add_argument("--rmax", type=int, default=8, help="decomposition length to exclude")
        sp.add_argument("--json", dest="json_path", help="also write the report to this path ('-' for stdout only)")
        sp.add_argument("--dual-names", dest="dual_names", help="comma-separated dual variable names")
        if name == "macaulay":
            sp.add_argument("--dim", type=int, help="current graded dimension")
        if name == "witness-verify":
            sp.add_argument("--k", type=int, help="scale exponent (default 1)")
        if name == "double-points":
            sp.add_argument("--pairs", help="semicolon-separated l,m pairs")
        if name == "direct-sum":
            sp.add_argument("--poly2", help="second summand (disjoint variables)")
            sp.add_argument("--vars2", help="variable order for the second summand")
    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    doc = {
        "command": args.command,
        "input": {
            "poly": getattr(args, "poly", None),
            "vars": args.vars.split(",") if getattr(args, "vars", None) else None,
        },
        "version": __version__,
    }
    try:
        results, certs, ok = _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc["results"] = results
    doc["certificates"] = certs
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if getattr(args, "json_path", None) and args.json_path != "-":
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
