"""Command-line surface: analyze, roots, verify, figure, classify, explore.

Exit codes: 0 success, 1 property violation (the verify suites' signal),
2 invalid input, 3 certification shortfall (results only hold inside the
reported box or bound).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cones import IntBox
from .classify import (
    ClassifyError,
    ExploreBudget,
    classify,
    emit_sl_family,
    explore_same_roots,
)
from .render import MAX_BOX_AREA, render_ascii, render_svg
from .roots import DEFAULT_BOUND, root_set, roots_in_box, root_subset
from .semigroup import AffineSemigroup, SemigroupError
from .verify import SUITES, run_suite
from .wire import (
    FIXTURES,
    SpecError,
    fixture_text,
    load_spec_text,
    serialize_semigroup,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_CERT = 3


def _die_input(msg_obj, as_json: bool):
    if as_json:
        print(json.dumps(msg_obj, sort_keys=True))
    else:
        print(f"error: {msg_obj}", file=sys.stderr)
    return EXIT_INPUT


def _load_spec(arg: str) -> AffineSemigroup:
    """A path to a JSON spec, or the bare name of a shipped fixture."""
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return load_spec_text(fh.read())
    if arg in FIXTURES:
        return load_spec_text(fixture_text(arg))
    raise SpecError(f"no such file, and not a fixture name: {arg}")


def _parse_box(text: str, rank: int) -> IntBox:
    parts = text.split(",")
    if len(parts) != rank:
        raise SpecError(f"box has {len(parts)} ranges, expected {rank}", "box")
    lo, hi = [], []
    for part in parts:
        if ".." not in part:
            raise SpecError(f"range {part!r} is not of the form a..b", "box")
        a, b = part.split("..", 1)
        try:
            lo.append(int(a))
            hi.append(int(b))
        except ValueError as e:
            raise SpecError(f"bad integer in range {part!r}", "box") from e
    try:
        return IntBox(tuple(lo), tuple(hi))
    except ValueError as e:
        raise SpecError(str(e), "box") from e


def _emit(data, as_json: bool):
    if as_json:
        print(json.dumps(data, sort_keys=True))
    else:
        _emit_text(data)


def _flat(v) -> bool:
    return isinstance(v, list) and all(isinstance(x, (int, str, bool)) for x in v)


def _emit_text(data, indent=0):
    pad = "  " * indent
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if _flat(v):
                print(f"{pad}{k}: {v}")
            elif isinstance(v, (dict, list)) and v:
                print(f"{pad}{k}:")
                _emit_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if _flat(v):
                print(f"{pad}{v}")
            elif isinstance(v, (dict, list)):
                _emit_text(v, indent)
            else:
                print(f"{pad}{v}")
    else:
        print(f"{pad}{data}")


def cmd_analyze(args) -> int:
    as_json = args.format == "json"
    try:
        S = _load_spec(args.spec)
        box = _parse_box(args.box, S.rank) if args.box else \
            IntBox((0,) * S.rank, (6,) * S.rank)
        sat, basis = S.saturation()
        report = {
            "rank": S.rank,
            "representation": S.kind,
            "dual_rays": [list(r) for r in S.dual_rays()],
            "hilbert_basis": [list(h) for h in basis.elements],
            "pointed": S.is_pointed(),
            "saturated": S.is_saturated(),
            "minimally_embedded": S.is_minimally_embedded(),
            "holes_in_box": [list(h) for h in S.holes_within(box)],
            "box": {"lo": list(box.lo), "hi": list(box.hi)},
        }
    except (SpecError, SemigroupError) as e:
        payload = e.as_json() if isinstance(e, SpecError) else \
            {"error": {"reason": str(e), "field": ""}}
        return _die_input(payload if as_json else str(e), as_json)
    _emit(report, as_json)
    return EXIT_OK


def cmd_roots(args) -> int:
    as_json = args.format == "json"
    try:
        S = _load_spec(args.spec)
        box = _parse_box(args.box, S.rank) if args.box else \
            IntBox((-args.bound,) * S.rank, (args.bound,) * S.rank)
        rs = root_set(S, args.bound, box if not args.box else None)
        witnesses = roots_in_box(S, box, args.bound)
    except (SpecError, SemigroupError) as e:
        payload = e.as_json() if isinstance(e, SpecError) else \
            {"error": {"reason": str(e), "field": ""}}
        return _die_input(payload if as_json else str(e), as_json)
    per_ray = []
    for sl in rs.per_ray:
        per_ray.append(
            {
                "ray": list(sl.ray),
                "slice_level": sl.polyhedron.level,
                "slice_inequalities": [list(n) for n in
                                       sl.polyhedron.inequality_normals],
                "finite_exceptions": [list(p) for p in sl.finite_exceptions],
                "family_exceptions": [
                    {"base": list(f.base), "step": list(f.step)}
                    for f in sl.family_exceptions
                ],
                "exact": sl.exact,
            }
        )
    report = {
        "roots_in_box": [
            {"alpha": list(w.alpha), "ray": list(w.ray), "certified": w.certified}
            for w in witnesses
        ],
        "per_ray": per_ray,
        "exact": rs.is_exact(),
        "bound": args.bound,
        "box": {"lo": list(box.lo), "hi": list(box.hi)},
    }
    if rs.certified_box is not None:
        report["certified_box"] = {
            "lo": list(rs.certified_box.lo),
            "hi": list(rs.certified_box.hi),
        }
    _emit(report, as_json)
    if not rs.is_exact():
        cb = rs.certified_box
        covered = cb is not None and all(
            c <= b and B <= C
            for b, B, c, C in zip(box.lo, box.hi, cb.lo, cb.hi)
        )
        if not covered:
            return EXIT_CERT
    return EXIT_OK


def cmd_verify(args) -> int:
    as_json = args.format == "json"
    try:
        if args.suite == "algebra" and args.inject_corruption:
            from .verify import suite_algebra

            rep = suite_algebra(args.seed, args.instances, corrupt=True)
        else:
            rep = run_suite(args.suite, args.seed, args.instances)
    except (SpecError, SemigroupError, ValueError) as e:
        return _die_input({"error": {"reason": str(e)}} if as_json else str(e),
                          as_json)
    _emit(rep.as_json(), as_json)
    return EXIT_OK if rep.passed else EXIT_PROPERTY


def cmd_figure(args) -> int:
    as_json = args.format == "json"
    try:
        S = _load_spec(args.spec)
        box = _parse_box(args.box, 2) if args.box else IntBox((-1, -1), (7, 7))
        if box.count() > MAX_BOX_AREA:
            raise SpecError(
                f"box has {box.count()} cells, limit is {MAX_BOX_AREA}", "box"
            )
        if args.style == "svg":
            out = render_svg(S, box, args.bound)
        else:
            out = render_ascii(S, box, args.bound)
    except (SpecError, SemigroupError) as e:
        payload = e.as_json() if isinstance(e, SpecError) else \
            {"error": {"reason": str(e), "field": ""}}
        return _die_input(payload if as_json else str(e), as_json)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_classify(args) -> int:
    as_json = args.format == "json"
    try:
        S = _load_spec(args.spec)
        cls = classify(S)
        report = {
            "case": cls.case,
            "rank": cls.rank,
            "unit_rank": cls.unit_rank,
            "is_degenerate": cls.is_degenerate,
            "pointed_smooth": cls.pointed_smooth,
            "pointed_hilbert_size": cls.pointed_hilbert_size,
        }
        if cls.split_vector is not None:
            report["split_vector"] = list(cls.split_vector)
            report["split_ray"] = list(cls.split_ray)
            report["complement"] = (
                serialize_semigroup(cls.complement) if cls.complement else None
            )
        if args.emit_sl:
            fam = emit_sl_family(S, k=args.k, L=args.emit_sl)
            report["sl_family"] = [
                {"l": l, "spec": serialize_semigroup(m)} for l, m in fam.members
            ]
    except ClassifyError as e:
        payload = {"error": {"reason": str(e)}}
        if e.classification is not None:
            payload["classification"] = {
                "case": e.classification.case,
                "unit_rank": e.classification.unit_rank,
            }
        _emit(payload, as_json)
        return EXIT_INPUT
    except (SpecError, SemigroupError) as e:
        payload = e.as_json() if isinstance(e, SpecError) else \
            {"error": {"reason": str(e), "field": ""}}
        return _die_input(payload if as_json else str(e), as_json)
    _emit(report, as_json)
    return EXIT_OK


def cmd_explore(args) -> int:
    as_json = args.format == "json"
    try:
        S = _load_spec(args.spec)
        budget = ExploreBudget(
            max_grading=args.budget,
            seed_size=args.seed_size,
            family_coeff_bound=args.family_bound,
            max_results=args.max_results,
        )
        out = explore_same_roots(S, budget)
    except (SpecError, SemigroupError) as e:
        payload = e.as_json() if isinstance(e, SpecError) else \
            {"error": {"reason": str(e), "field": ""}}
        return _die_input(payload if as_json else str(e), as_json)
    report = {
        "note": out.note,
        "budget": {
            "max_grading": budget.max_grading,
            "seed_size": budget.seed_size,
            "family_coeff_bound": budget.family_coeff_bound,
        },
        "found": [serialize_semigroup(s) for s in out.found],
        "count": len(out.found),
    }
    _emit(report, as_json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="toric-roots",
        description="Exact computations with affine semigroups and their "
                    "Demazure roots.",
    )
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    spec_help = "path to a JSON semigroup spec, or a fixture name " \
                f"({', '.join(FIXTURES)})"

    pa = sub.add_parser("analyze", help="dual rays, Hilbert basis, saturation")
    pa.add_argument("spec", help=spec_help)
    pa.add_argument("--box", help='hole window, e.g. "0..6,0..8"')
    pa.set_defaults(fn=cmd_analyze)

    pr = sub.add_parser("roots", help="roots in a box plus per-ray description")
    pr.add_argument("spec", help=spec_help)
    pr.add_argument("--box", help='window, e.g. "-1..8,-2..1"')
    pr.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    pr.set_defaults(fn=cmd_roots)

    pv = sub.add_parser("verify", help="run a named property suite")
    pv.add_argument("suite", choices=SUITES)
    pv.add_argument("--seed", type=int, default=7)
    pv.add_argument("--instances", type=int, default=100)
    pv.add_argument("--inject-corruption", action="store_true",
                    help="negative control: corrupt the derivation rule")
    pv.set_defaults(fn=cmd_verify)

    pf = sub.add_parser("figure", help="ascii or svg lattice diagram")
    pf.add_argument("spec", help=spec_help)
    pf.add_argument("--box", help='window, e.g. "-1..7,-1..7"')
    pf.add_argument("--style", choices=("ascii", "svg"), default="ascii")
    pf.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    pf.set_defaults(fn=cmd_figure)

    pc = sub.add_parser("classify", help="lattice / line-factor / general")
    pc.add_argument("spec", help=spec_help)
    pc.add_argument("--emit-mode", dest="_ignore", help=argparse.SUPPRESS)
    pc.add_argument("--emit-sl", type=int, default=0, metavar="L",
                    help="also emit the first L layer-removal companions")
    pc.add_argument("--k", type=int, default=0,
                    help="unit padding for the emitted companions")
    pc.set_defaults(fn=cmd_classify)

    pe = sub.add_parser("explore", help="bounded same-root search")
    pe.add_argument("spec", help=spec_help)
    pe.add_argument("--budget", type=int, default=12,
                    help="grading bound for candidate holes")
    pe.add_argument("--seed-size", type=int, default=2)
    pe.add_argument("--family-bound", type=int, default=2)
    pe.add_argument("--max-results", type=int, default=None)
    pe.set_defaults(fn=cmd_explore)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
