"""Command-line front end: ``beacon-route <command> ...``.

Exit codes: 0 success, 1 a check failed (or the input polygon is invalid),
2 usage or input-format error, 3 internal error (a state dump is written).
"""
from __future__ import annotations

import argparse
import json
import sys
import tempfile
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import metadata
from typing import Any, Optional, Sequence

from gmpy2 import mpq

from . import io
from .attraction import attraction_path
from .decomposition import vertical_decomposition
from .geometry import (
    GeometryError,
    Point,
    compute_epsilon,
    generate_random_orthogonal,
    perturb_to_general_position,
    validate_polygon,
)
from .spiral import SpiralSpec, certify, generate_spiral, region_between_lines, witness_stuck
from .svg import Scene, emit_svg
from .synthesis import NoCaseMatched, check_budget, synthesize
from .verify import sample_points, verify_routing_set

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


@dataclass
class RunManifest:
    command: str
    inputs: list[str]
    seed: Optional[int]
    flags: dict[str, Any]
    version: str = field(default_factory=tool_version)
    output_digest: str = ""


class UsageError(Exception):
    pass


def _parse_point_arg(text: str) -> Point:
    try:
        xs, ys = text.split(",")
        return Point(mpq(xs.strip()), mpq(ys.strip()))
    except ValueError as exc:
        raise UsageError(f"cannot parse point {text!r}; expected 'x,y' with rationals like 3/2") from exc


def _emit(args, payload: dict, inputs: Sequence[str], seed=None) -> None:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    body = io.dumps(payload)
    man = RunManifest(args.command, list(inputs), seed, flags, output_digest=io.digest(body))
    doc = dict(payload)
    doc["manifest"] = asdict(man)
    text = io.dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    raw = io.parse_points(io.load_json(args.polygon)["vertices"])
    try:
        poly = validate_polygon(raw)
        perturbed = False
    except GeometryError as exc:
        if not args.perturb:
            _emit(args, {"valid": False, "error": type(exc).__name__, "message": str(exc),
                         "indices": list(exc.indices)}, [args.polygon])
            return EXIT_CHECK
        poly = validate_polygon(perturb_to_general_position(raw))
        perturbed = True
    _emit(args, {
        "valid": True,
        "perturbed": perturbed,
        "n": poly.n,
        "reflex": len(poly.reflex_vertices),
        "epsilon": io.dump_q(compute_epsilon(poly)),
        "polygon": io.polygon_doc(poly),
    }, [args.polygon])
    return EXIT_OK


def cmd_decompose(args) -> int:
    poly = io.load_polygon(args.polygon)
    d = vertical_decomposition(poly)
    if args.svg:
        emit_svg(Scene(poly, d), args.svg)
    _emit(args, io.decomposition_doc(d), [args.polygon])
    return EXIT_OK


def cmd_attract(args) -> int:
    poly = io.load_polygon(args.polygon)
    p, q = _parse_point_arg(args.robot), _parse_point_arg(args.beacon)
    path = attraction_path(poly, p, q)
    if args.svg:
        emit_svg(Scene(poly, vertical_decomposition(poly), beacons=[q], paths=[path]), args.svg)
    _emit(args, io.path_doc(path), [args.polygon])
    return EXIT_OK


def cmd_synthesize(args) -> int:
    poly = io.load_polygon(args.polygon)
    beacons, trace, st = synthesize(poly)
    budget = check_budget(trace, poly.n)
    if args.svg:
        shaded = [i for s in trace[:-1] for i in s.removed]
        emit_svg(Scene(poly, st.d, shaded=shaded, beacons=beacons.beacons), args.svg)
    _emit(args, io.synthesis_doc(beacons, trace, budget), [args.polygon])
    return EXIT_OK if budget.ok else EXIT_CHECK


def cmd_verify(args) -> int:
    poly = io.load_polygon(args.polygon)
    d = vertical_decomposition(poly)
    inputs = [args.polygon]
    if args.beacons:
        beacons = io.load_beacons(args.beacons)
        inputs.append(args.beacons)
    else:
        beacons = list(synthesize(poly)[0].beacons)
    samples = sample_points(poly, d, args.seed, args.samples)
    rep = verify_routing_set(poly, d, beacons, samples, require_local=args.require_local)
    doc = rep.as_dict()
    doc["beacons"] = [io.dump_point(b) for b in beacons]
    doc["bound"] = (poly.n - 4) // 3
    _emit(args, doc, inputs, seed=args.seed)
    return EXIT_OK if rep.ok else EXIT_CHECK


def cmd_spiral(args) -> int:
    if args.lengths:
        try:
            lengths = tuple(int(v) for v in args.lengths.split(","))
        except ValueError as exc:
            raise UsageError(f"bad --lengths {args.lengths!r}") from exc
        spec = SpiralSpec(args.sections, lengths)
    else:
        spec = SpiralSpec.default(args.sections)
    sp = generate_spiral(spec, allow_large=args.allow_large)
    cert = certify(sp)
    sections = []
    for s in sp.sections:
        sections.append({
            "index": s.index,
            "corners": {str(k): io.rect_doc(r) for k, r in s.corners.items()},
            "hallways": {str(k): io.rect_doc(r) for k, r in s.hallways.items()},
            "half_plus": io.rect_doc(s.half_plus),
            "half_minus": io.rect_doc(s.half_minus),
            "m_out": {str(k): io.dump_point(p) for k, p in s.m_out.items()},
            "region": [io.dump_point(p) for p in region_between_lines(sp, s.index).vertices],
        })
    doc = io.polygon_doc(sp.poly)
    doc["lengths"] = list(spec.lengths)
    doc["sections"] = sections
    doc["certificate"] = asdict(cert) | {"ok": cert.ok}
    if args.svg:
        paths = [witness_stuck(sp, 1, True), witness_stuck(sp, 1, False)]
        beacons, _, st = synthesize(sp.poly)
        emit_svg(Scene(sp.poly, st.d, beacons=beacons.beacons, paths=paths), args.svg)
    _emit(args, doc, [])
    return EXIT_OK if cert.ok else EXIT_CHECK


def corpus_row(seed: int, n: int, samples: int, require_local: bool) -> dict:
    poly = generate_random_orthogonal(n, seed)
    beacons, trace, st = synthesize(poly)
    budget = check_budget(trace, poly.n)
    pts = sample_points(poly, st.d, seed, samples)
    rep = verify_routing_set(poly, st.d, list(beacons.beacons), pts, require_local=require_local)
    return {
        "seed": seed,
        "n": poly.n,
        "beacons": len(beacons.beacons),
        "bound": budget.bound,
        "budget_violations": list(budget.violations),
        "pairs_checked": rep.pairs_checked,
        "routing_failures": len(rep.failures),
        "nonlocal_pairs": rep.nonlocal_pairs,
        "cases": budget.histogram,
    }


def corpus_plan(count: int, seed: int, max_n: int, min_n: int = 8) -> list[tuple[int, int]]:
    sizes = list(range(min_n, max_n + 1, 2))
    return [(seed + j, sizes[j % len(sizes)]) for j in range(count)]


def cmd_corpus(args) -> int:
    if args.max_n < 8 or args.count < 1:
        raise UsageError("--max-n must be >= 8 and --count >= 1")
    plan = corpus_plan(args.count, args.seed, args.max_n)
    jobs = [(s, n, args.samples, args.require_local) for s, n in plan]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            rows = list(ex.map(_corpus_job, jobs))
    else:
        rows = [_corpus_job(j) for j in jobs]
    hist: dict[str, int] = {}
    for r in rows:
        for k, v in r["cases"].items():
            hist[k] = hist.get(k, 0) + v
    summary = {
        "polygons": len(rows),
        "budget_violations": sum(len(r["budget_violations"]) for r in rows),
        "routing_failures": sum(r["routing_failures"] for r in rows),
        "nonlocal_pairs": sum(r["nonlocal_pairs"] for r in rows),
        "pairs_checked": sum(r["pairs_checked"] for r in rows),
        "case_histogram": dict(sorted(hist.items())),
        "rows": rows,
    }
    _emit(args, summary, [], seed=args.seed)
    ok = summary["budget_violations"] == 0 and summary["routing_failures"] == 0
    return EXIT_OK if ok else EXIT_CHECK


def _corpus_job(job) -> dict:
    return corpus_row(*job)


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="beacon-route", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    p = add("validate", cmd_validate, "check a polygon file")
    p.add_argument("polygon")
    p.add_argument("--perturb", action="store_true", help="perturb into general position if needed")

    p = add("decompose", cmd_decompose, "vertical decomposition and dual tree")
    p.add_argument("polygon")
    p.add_argument("--svg")

    p = add("attract", cmd_attract, "attraction path of one robot toward one beacon")
    p.add_argument("polygon")
    p.add_argument("robot", help="x,y")
    p.add_argument("beacon", help="x,y")
    p.add_argument("--svg")

    p = add("synthesize", cmd_synthesize, "place a routing set of beacons")
    p.add_argument("polygon")
    p.add_argument("--svg")

    p = add("verify", cmd_verify, "replay routings between sample points")
    p.add_argument("polygon")
    p.add_argument("beacons", nargs="?", help="beacon list; synthesized when omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--require-local", action=argparse.BooleanOptionalAction, default=True)

    p = add("spiral", cmd_spiral, "generate and certify a spiral")
    p.add_argument("--sections", type=int, required=True)
    p.add_argument("--lengths", help="comma-separated l_1..l_{3r+1}")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--svg")

    p = add("corpus", cmd_corpus, "seeded random corpus: synthesize, budget and verify")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=40)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--require-local", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--workers", type=int, default=1)
    return ap


def _dump_state(args, exc: BaseException) -> str:
    state = {
        "command": getattr(args, "command", None),
        "args": {k: str(v) for k, v in vars(args).items() if k != "func"},
        "error": type(exc).__name__,
        "message": str(exc),
        "traceback": traceback.format_exc(),
    }
    if isinstance(exc, NoCaseMatched):
        state["dump"] = exc.dump
    fd, path = tempfile.mkstemp(prefix="beacon-route-", suffix=".json")
    with open(fd, "w", encoding="utf-8") as fh:
        json.dump(state, fh, indent=2, default=str)
    return path


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, io.FormatError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except Exception as exc:  # noqa: BLE001
        path = _dump_state(args, exc)
        print(f"internal error: {type(exc).__name__}: {exc}\nstate dump: {path}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
