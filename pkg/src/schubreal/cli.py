"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure, 2 input error, 3 incomplete numerics.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import jsonschema

from . import schemas
from .exact import NotAPerfectSquare, Poly, format_rational, parse_rational
from .geometry import (
    NotIsotropic,
    SubspacePoint,
    isotropy_check,
    p_map,
    sample_isotropic,
    vanishing_order_matches_membership,
    wronskian,
)
from .osculating import (
    check_orthogonal_flag,
    check_skew_derivative,
    check_translation_invariance,
    format_point,
    parse_point,
)
from .partitions import (
    StrictPartition,
    all_strict,
    bar_sequence,
    enumerate_strict,
    rect_syt_count,
    shifted_syt_count,
    tilde_partition,
    weight,
)
from .solver import (
    ProblemError,
    SchubertProblem,
    SolverConfig,
    UnsupportedTarget,
    fiber_of_p,
    fiber_of_wronskian,
    solve,
)
from .solver.tracking import BACKENDS

EXIT_OK, EXIT_MATH, EXIT_INPUT, EXIT_INCOMPLETE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind, self.message = code, kind, message


def _input_error(kind: str, message: str) -> CliError:
    return CliError(EXIT_INPUT, kind, message)


# ---------------------------------------------------------------------------
# parsing helpers

def _points(text: str) -> list:
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            out.append(parse_point(item))
        except (ValueError, ZeroDivisionError) as exc:
            raise _input_error("SchemaError", f"malformed point {item!r}: {exc}") from None
    return out


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise _input_error("SchemaError", f"expected comma-separated integers, got {text!r}") from None


def _rationals(text: str) -> list[Fraction]:
    try:
        return [parse_rational(v) for v in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise _input_error("SchemaError", f"malformed rational list {text!r}: {exc}") from None


def _load_json(path: str, schema: dict, what: str):
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except OSError as exc:
        raise _input_error("IOError", f"cannot read {what} {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _input_error("SchemaError", f"{what} is not valid JSON: {exc}") from None
    try:
        schemas.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise _input_error("SchemaError", f"{what} at {loc}: {exc.message}") from None
    return doc


def _config(args, overrides: dict | None = None, seed: int | None = None) -> SolverConfig:
    data = dict(overrides or {})
    if args.config:
        data.update(_load_json(args.config, schemas.CONFIG, "config"))
    if seed is not None:
        data["seed"] = seed
    if args.seed is not None:
        data["seed"] = args.seed
    try:
        return SolverConfig.from_dict(data)
    except ValueError as exc:
        raise _input_error("ConfigError", str(exc)) from None


def _subspace(path: str) -> SubspacePoint:
    doc = _load_json(path, schemas.SUBSPACE, "subspace")
    try:
        return SubspacePoint.from_json(doc)
    except (ValueError, ZeroDivisionError) as exc:
        raise _input_error("SchemaError", f"subspace: {exc}") from None


def _poly_json(p: Poly) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


# ---------------------------------------------------------------------------
# commands; each returns (exit code, json document, summary lines)

def cmd_verify_flags(args):
    if args.n < 1:
        raise _input_error("SchemaError", "--n must be positive")
    points = _points(args.points)
    seed = 42 if args.seed is None else args.seed
    flags = [check_orthogonal_flag(a, args.n) for a in points]
    idents = [check_skew_derivative(args.n, args.trials, seed)]
    idents += [check_translation_invariance(a, args.n, args.trials, seed + 1)
               for a in points if isinstance(a, Fraction)]
    passed = all(r.passed for r in flags) and all(r.passed for r in idents)
    doc = {"n": args.n, "points": [format_point(a) for a in points], "passed": passed,
           "flags": [r.to_json() for r in flags], "identities": [r.to_json() for r in idents]}
    lines = [f"F_i(a)^perp = F_(2n+1-i)(a), n={args.n}, a={format_point(r.point)}: "
             f"{'pass' if r.passed else 'FAIL'}" for r in flags]
    lines += [f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.trials} trials)" for r in idents]
    return (EXIT_OK if passed else EXIT_MATH), doc, lines


def _strict_entry(sigma: StrictPartition) -> dict:
    lam = tilde_partition(sigma)
    return {"sigma": list(sigma.parts), "bar": list(bar_sequence(sigma).values),
            "tilde": list(lam.full()), "weight": weight(sigma), "tilde_weight": weight(lam),
            "shifted_syt_count": shifted_syt_count(sigma) if sigma.parts else 1}


def cmd_partitions(args):
    entries = []
    if args.box:
        dw = _ints(args.box)
        if len(dw) != 2 or min(dw) < 1:
            raise _input_error("SchemaError", "--box expects d,w with positive entries")
        entries.append({"box": dw, "rect_syt_count": rect_syt_count(*dw)})
    if args.n is not None:
        if args.n < 1:
            raise _input_error("SchemaError", "--n must be positive")
        try:
            if args.sigma is not None:
                sigmas = [StrictPartition(_ints(args.sigma), args.n)]
            elif args.weight is not None:
                sigmas = enumerate_strict(args.n, args.weight)
            else:
                sigmas = list(all_strict(args.n))
        except ValueError as exc:
            raise _input_error("SchemaError", str(exc)) from None
        entries += [_strict_entry(s) for s in sigmas]
    if not entries:
        raise _input_error("SchemaError", "give --n (optionally --sigma or --weight) and/or --box")
    lines = []
    for e in entries:
        if "box" in e:
            lines.append(f"SYT of {e['box'][0]}x{e['box'][1]} rectangle: {e['rect_syt_count']}")
        else:
            lines.append(f"sigma={tuple(e['sigma'])} bar={tuple(e['bar'])} tilde={tuple(e['tilde'])} "
                         f"|sigma|={e['weight']} |tilde|={e['tilde_weight']} g={e['shifted_syt_count']}")
    return EXIT_OK, {"entries": entries}, lines


def cmd_wronski(args):
    x = _subspace(args.subspace)
    points = _points(args.points)
    w = wronskian(x)
    reports = [vanishing_order_matches_membership(x, a) for a in points]
    ok = all(r.passed for r in reports)
    doc = {"subspace": x.to_json(), "wronskian": _poly_json(w), "degree_bound": x.d * (x.m - x.d),
           "cells": [r.to_json() for r in reports]}
    lines = [f"Wr = {w!r}"] + [f"a={format_point(r.point)}: order {r.wr_multiplicity}, cell "
                                f"{tuple(r.cell.parts)} {'ok' if r.passed else 'MISMATCH'}" for r in reports]
    return (EXIT_OK if ok else EXIT_MATH), doc, lines


def cmd_pmap(args):
    y = _subspace(args.subspace)
    if y.m % 2 == 0 or y.d != (y.m - 1) // 2:
        raise _input_error("SchemaError", f"an isotropic n-plane needs m = 2n+1; got d={y.d}, m={y.m}")
    n = y.d
    if not isotropy_check(y, n):
        raise CliError(EXIT_MATH, "NotIsotropic", "the subspace is not isotropic for the form on C_2n[z]")
    try:
        p = p_map(y, n)
    except NotAPerfectSquare as exc:
        raise CliError(EXIT_MATH, "NotAPerfectSquare", str(exc)) from None
    except NotIsotropic as exc:
        raise CliError(EXIT_MATH, "NotIsotropic", str(exc)) from None
    reports = [vanishing_order_matches_membership(y, a, orthogonal=True) for a in _points(args.points)]
    ok = all(r.passed for r in reports)
    doc = {"subspace": y.to_json(), "isotropic": True, "wronskian": _poly_json(wronskian(y)),
           "p": _poly_json(p), "cells": [r.to_json() for r in reports]}
    lines = [f"P = {p!r}"] + [f"a={format_point(r.point)}: P order {r.p_multiplicity}, cell "
                              f"{tuple(r.strict_cell.parts)} {'ok' if r.passed else 'MISMATCH'}"
                              for r in reports]
    return (EXIT_OK if ok else EXIT_MATH), doc, lines


def cmd_sample_isotropic(args):
    if args.n < 1 or args.count < 0:
        raise _input_error("SchemaError", "--n must be positive and --count non-negative")
    seed = 0 if args.seed is None else args.seed
    pts = sample_isotropic(args.n, args.count, seed)
    ok = all(isotropy_check(y, args.n) for y in pts)
    doc = {"n": args.n, "count": args.count, "seed": seed, "points": [y.to_json() for y in pts]}
    lines = [f"{len(pts)} isotropic {args.n}-planes in C_{2 * args.n}[z] (seed {seed}); "
             f"all isotropic: {ok}"]
    return (EXIT_OK if ok else EXIT_MATH), doc, lines


def _problem_from_doc(doc: dict) -> SchubertProblem:
    try:
        if doc["space"] == "OG":
            return SchubertProblem.orthogonal(doc["n"], doc["conditions"])
        return SchubertProblem.grassmannian(doc["d"], doc["m"], doc["conditions"])
    except (ProblemError, ValueError, ZeroDivisionError) as exc:
        raise _input_error(type(exc).__name__, str(exc)) from None


def _solve_summary(res) -> list[str]:
    lines = [f"{res.problem.space}: {len(res.solutions)} solutions (expected "
             f"{res.expected if res.expected is not None else 'unknown'}), "
             f"{len(res.statuses)} paths, complete={res.complete}"]
    for k, s in enumerate(res.solutions):
        rel = s.sigma_min_relative
        lines.append(f"  #{k}: residual {s.residual:.1e}, sigma_min/sigma_max "
                     f"{'n/a' if rel is None else f'{rel:.2e}'}, transverse={s.transverse}, "
                     f"real={s.real}")
    return lines


def _solve_exit(res) -> int:
    if not res.complete:
        return EXIT_INCOMPLETE
    return EXIT_OK if res.certified else EXIT_MATH


def cmd_solve(args):
    doc = _load_json(args.problem, schemas.PROBLEM, "problem")
    problem = _problem_from_doc(doc)
    cfg = _config(args, doc.get("config"), doc.get("seed"))
    try:
        res = solve(problem, cfg, args.backend)
    except ProblemError as exc:
        raise _input_error(type(exc).__name__, str(exc)) from None
    return _solve_exit(res), res.to_json(), _solve_summary(res)


def cmd_fiber(args):
    if args.target is None and args.roots is None:
        raise _input_error("SchemaError", "give --target coefficients or --roots")
    if args.target is not None:
        h = Poly(_rationals(args.target))
    else:
        h = Poly([1])
        for a in _rationals(args.roots):
            h = h * Poly([a, 1])
    cfg = _config(args)
    try:
        if args.n is not None:
            res = fiber_of_p(h, args.n, cfg, args.backend)
        elif args.d is not None and args.m is not None:
            res = fiber_of_wronskian(h, args.d, args.m, cfg, args.backend)
        else:
            raise _input_error("SchemaError", "give --n (OG) or --d and --m (Gr)")
    except UnsupportedTarget as exc:
        raise _input_error("UnsupportedTarget", str(exc)) from None
    except (ProblemError, ValueError) as exc:
        raise _input_error(type(exc).__name__, str(exc)) from None
    doc = res.to_json()
    lines = [f"fiber over {h!r}: {len(res)} points, complete={res.complete}, "
             f"max projective distance {res.max_distance:.1e}"]
    if not res.complete:
        return EXIT_INCOMPLETE, doc, lines
    ok = all(p.distance <= 1e-9 and p.certificate.transverse and p.certificate.real
             for p in res.points) and all(r.certified for r in res.runs)
    if res.generic and len(res) != res.expected_degree:
        ok = False
    return (EXIT_OK if ok else EXIT_MATH), doc, lines


COMMANDS = {
    "verify-flags": cmd_verify_flags,
    "partitions": cmd_partitions,
    "wronski": cmd_wronski,
    "pmap": cmd_pmap,
    "sample-isotropic": cmd_sample_isotropic,
    "solve": cmd_solve,
    "fiber": cmd_fiber,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON document instead of a summary")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--config", default=None, help="JSON file of solver settings")

    parser = argparse.ArgumentParser(prog="schubreal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-flags", parents=[common], help="orthogonality of osculating flags")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", default="0,infinity")
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("partitions", parents=[common], help="bar and tilde sequences, tableaux counts")
    p.add_argument("--n", type=int)
    p.add_argument("--sigma", help="strict partition, comma separated")
    p.add_argument("--weight", type=int, help="list strict partitions of this weight")
    p.add_argument("--box", help="d,w rectangle for the standard tableaux count")

    p = sub.add_parser("wronski", parents=[common], help="Wronskian of a subspace and its cells")
    p.add_argument("subspace", help="JSON file {d, m, rows} or - for stdin")
    p.add_argument("--points", default="0,infinity")

    p = sub.add_parser("pmap", parents=[common], help="square root P of the Wronskian of an isotropic subspace")
    p.add_argument("subspace", help="JSON file {d, m, rows} or - for stdin")
    p.add_argument("--points", default="0,infinity")

    p = sub.add_parser("sample-isotropic", parents=[common], help="random exact isotropic subspaces")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)

    backends = sorted(BACKENDS)
    p = sub.add_parser("solve", parents=[common], help="solve and certify a Schubert problem")
    p.add_argument("problem", help="problem JSON file or - for stdin")
    p.add_argument("--backend", choices=backends, default=None)

    p = sub.add_parser("fiber", parents=[common], help="fiber of the P map (--n) or the Wronski map (--d, --m)")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--target", help="coefficients of h, lowest degree first, e.g. 0,2,3,1")
    p.add_argument("--roots", help="points a_i with h = prod (z + a_i)")
    p.add_argument("--backend", choices=backends, default=None)
    return parser


_VALUE_OPTIONS = ("--points", "--target", "--roots", "--sigma")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let ``--points -3/2`` through: argparse would read ``-3/2`` as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        code, doc, lines = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc.kind}: {exc.message}", file=stderr)
        if args.json:
            print(json.dumps({"error": exc.kind, "message": exc.message}, indent=2), file=stdout)
        return exc.code
    if args.json:
        print(json.dumps(doc, indent=2), file=stdout)
    else:
        print("\n".join(lines), file=stdout)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
