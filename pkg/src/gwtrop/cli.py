"""Command-line interface: ``gwtrop {intersect,bezout,plot,verify}``.

Reports are JSON with sorted keys, so equal inputs and seeds give
byte-identical output. Exit codes: 0 success, 2 non-transverse input,
3 malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from math import prod
from pathlib import Path
from typing import Optional, Sequence

from .enriched import (
    enriched_multiplicity,
    geometric_sign,
    is_combinatorially_oriented,
    mixed_volume_of,
    signed_odd_corners,
)
from .errors import DimensionMismatch, FieldError, GWTropError, InputError, NonTransverse
from .fields import FieldSpec, parse_field
from .gw import GWElement, anisotropic_rank
from .intersect import find_transverse_intersections, local_binomial_system
from .lattice import boundary_odd_points, minkowski_sum_all, standard_simplex
from .oracle import oracle_multiplicity
from .gw import gw_equal
from .random_inputs import generic_configuration, random_datum, simplex_support
from .tropical import EnrichedHypersurface, newton_polytope

EXIT_OK = 0
EXIT_NON_TRANSVERSE = 2
EXIT_INPUT = 3


def gw_json(x: GWElement) -> dict:
    out = x.to_json()
    out["text"] = str(x)
    return out


def load_problem(path: str, field_override: Optional[str] = None):
    """(field, hypersurfaces, options) from a problem file."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read problem file {path}: {exc}") from exc
    if not isinstance(data, dict) or "hypersurfaces" not in data:
        raise InputError("problem file needs a 'hypersurfaces' list")
    try:
        field = parse_field(field_override or data.get("field", "Q"))
    except FieldError as exc:
        raise InputError(str(exc)) from exc
    surfaces = [EnrichedHypersurface.from_json(h, field) for h in data["hypersurfaces"]]
    dims = {f.dim for f in surfaces}
    if len(dims) != 1 or dims.pop() != len(surfaces):
        raise InputError("need n hypersurfaces in R^n")
    return field, surfaces, data.get("options", {})


def intersection_report(surfaces: Sequence[EnrichedHypersurface], field: FieldSpec, verify_oracle: bool = False) -> dict:
    data = find_transverse_intersections(surfaces, field)
    records = []
    total = GWElement.zero(field)
    for d in data:
        mult = enriched_multiplicity(d, field)
        total = total + mult
        rec = d.to_json()
        rec["gw"] = gw_json(mult)
        rec["determinant"] = d.determinant
        rec["odd_corners"] = [
            dict(c.to_json(), geometric_sign=geometric_sign(d, c.vertex)) for c in signed_odd_corners(d)
        ]
        if verify_oracle:
            oracle = oracle_multiplicity(local_binomial_system(d), field)
            rec["oracle_gw"] = gw_json(oracle)
            rec["match"] = gw_equal(oracle, mult)
        records.append(rec)
    polys = [newton_polytope(f) for f in surfaces]
    N = len(boundary_odd_points(minkowski_sum_all(polys))) if len(polys) <= 3 else None
    r = anisotropic_rank(total)
    totals = {
        "mvol": mixed_volume_of(surfaces),
        "total_gw": gw_json(total),
        "combinatorially_oriented": is_combinatorially_oriented(polys),
        "r": r,
        "N": N,
        "bound_ok": r <= N,
    }
    return {"field": field.name, "points": records, "totals": totals}


def bezout_summary(degrees: Sequence[int], field: FieldSpec, trials: int, seed: int) -> dict:
    """Random dense enriched hypersurfaces on Delta_{d_i}; compare totals with (prod d / 2) h."""
    n = len(degrees)
    if not 1 <= n <= 3:
        raise InputError("bezout supports 1 to 3 degrees")
    if any(d < 1 for d in degrees):
        raise InputError("degrees must be positive")
    rng = random.Random(seed)
    supports = [simplex_support(n, d) for d in degrees]
    oriented = sum(degrees) % 2 == (n + 1) % 2
    expected = GWElement.hyperbolic(field, prod(degrees) // 2) if oriented else None
    N = len(boundary_odd_points(standard_simplex(n, sum(degrees))))
    results = []
    for t in range(trials):
        _, report = generic_configuration(rng, field, supports, lambda s: intersection_report(s, field))
        total = GWElement.from_json(report["totals"]["total_gw"])
        entry = {"trial": t, "total_gw": gw_json(total), "r": report["totals"]["r"], "N": N}
        if oriented:
            entry["match"] = gw_equal(total, expected)
        else:
            entry["bound_ok"] = report["totals"]["r"] <= min(N, min(degrees) if n == 2 else N)
        results.append(entry)
    summary = {
        "degrees": list(degrees),
        "field": field.name,
        "seed": seed,
        "combinatorially_oriented": oriented,
        "trials": results,
    }
    if oriented:
        summary["expected"] = gw_json(expected)
        summary["all_match"] = all(e["match"] for e in results)
    else:
        summary["all_bounds_ok"] = all(e["bound_ok"] for e in results)
    return summary


def verify_sweep(n: Optional[int], max_m: int, count: int, field: FieldSpec, seed: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        dim = n if n else rng.choice([1, 2, 3])
        d = random_datum(rng, field, dim, max_m)
        main = enriched_multiplicity(d, field)
        oracle = oracle_multiplicity(local_binomial_system(d), field)
        if not gw_equal(main, oracle):
            failures.append({"index": i, "datum": d.to_json(), "main": gw_json(main), "oracle": gw_json(oracle)})
    return {"field": field.name, "checked": count, "all_match": not failures, "failures": failures, "seed": seed}


def _emit(report: dict, json_path: Optional[str]):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if json_path:
        Path(json_path).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gwtrop", description="Quadratically enriched tropical intersection counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input):
        if needs_input:
            p.add_argument("--input", required=True, help="problem file (JSON)")
        p.add_argument("--field", help="Q, R or F<p>; overrides the problem file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", help="write the report here instead of stdout")

    p = sub.add_parser("intersect", help="enriched multiplicities of a problem file")
    common(p, True)
    p.add_argument("--verify-oracle", action="store_true", help="compare every point with the trace-form oracle")
    p.add_argument("--svg", help="also render the configuration (planar input only)")

    p = sub.add_parser("bezout", help="random enriched Bezout trials on dense simplices")
    common(p, False)
    p.add_argument("degrees", type=int, nargs="+")
    p.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("plot", help="render a planar problem as SVG")
    common(p, True)
    p.add_argument("--svg", required=True, help="output path")

    p = sub.add_parser("verify", help="oracle sweep over random binomial systems")
    common(p, False)
    p.add_argument("--n", type=int, help="dimension (default: random in 1..3)")
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--count", type=int, default=100)
    return parser


def _field(args, default="Q") -> FieldSpec:
    try:
        return parse_field(args.field or default)
    except FieldError as exc:
        raise InputError(str(exc)) from exc


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "intersect":
            field, surfaces, options = load_problem(args.input, args.field)
            verify = args.verify_oracle or bool(options.get("verify_oracle", False))
            report = intersection_report(surfaces, field, verify)
            svg_path = args.svg or options.get("svg")
            if svg_path:
                from .plot import render_svg

                Path(svg_path).write_text(render_svg(surfaces, field))
            _emit(report, args.json)
        elif args.command == "plot":
            from .plot import render_svg

            field, surfaces, _ = load_problem(args.input, args.field)
            Path(args.svg).write_text(render_svg(surfaces, field))
        elif args.command == "bezout":
            _emit(bezout_summary(args.degrees, _field(args), args.trials, args.seed), args.json)
        elif args.command == "verify":
            if args.n is not None and not 1 <= args.n <= 3:
                raise InputError("--n must be 1, 2 or 3")
            if args.max_m < 1 or args.count < 0:
                raise InputError("--max-m must be positive and --count nonnegative")
            _emit(verify_sweep(args.n, args.max_m, args.count, _field(args), args.seed), args.json)
    except NonTransverse as exc:
        print(f"non-transverse input: {exc}", file=sys.stderr)
        return EXIT_NON_TRANSVERSE
    except (InputError, DimensionMismatch, FieldError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GWTropError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(run())
