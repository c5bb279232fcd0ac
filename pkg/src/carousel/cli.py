"""Command-line interface.

Verbs: check, fuzz, oracle, sweep, repro3d, render.  Reports go to stdout or
to -o as canonical JSON; human summaries and timings go to stderr so the
machine-readable stream stays reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .errors import CarouselError, ParseError, SchemaError
from .fuzz import FUZZ_KINDS, run_fuzz, run_oracle_check
from .harness import (
    EXIT_INPUT_ERROR,
    EXIT_REFUTED,
    EXIT_VERIFIED,
    run_scenario,
    run_scenario_obj,
    write_report,
)
from .reports import TOOL_INFO, canonical_json
from .scenario import load_scenario
from .svgfig import render_svg


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carousel",
        description="verify carousel witnesses, sweep critical scales, and "
        "reproduce the sphere counterexamples",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="run a scenario file and report its verdict")
    p.add_argument("scenario", type=Path)
    p.add_argument("-o", "--output", type=Path, default=None)

    p = sub.add_parser("fuzz", help="seeded fuzz campaign over random instances")
    p.add_argument("--kind", choices=FUZZ_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, default=None)
    p.add_argument("--dump-dir", type=Path, default=None,
                   help="write one scenario file per failure here")

    p = sub.add_parser("oracle", help="cross-check the predicate against the sampling oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, default=None)

    p = sub.add_parser("sweep", help="trace the critical scale for a fixed witness pair")
    p.add_argument("scenario", type=Path)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("-o", "--output", type=Path, default=None)

    p = sub.add_parser("repro3d", help="reproduce a 3D counterexample")
    p.add_argument("--example", choices=("4.1", "4.2"), required=True)
    p.add_argument("--t", type=int, default=4)
    p.add_argument("--r", type=float, default=0.1)
    p.add_argument("--side", type=float, default=1.0)
    p.add_argument("--factor", type=float, default=10.0)
    p.add_argument("-o", "--output", type=Path, default=None)

    p = sub.add_parser("render", help="emit an SVG figure for a scenario")
    p.add_argument("scenario", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)

    return parser


def _emit(report: dict, output: Path | None) -> None:
    text = write_report(report, output)
    if output is None:
        sys.stdout.write(text)


def _cmd_check(args) -> int:
    report, code = run_scenario(args.scenario)
    _emit(report, args.output)
    print(f"check: {report.get('verdict', '?')}", file=sys.stderr)
    return code


def _cmd_fuzz(args) -> int:
    rep = run_fuzz(args.n, args.seed, args.kind)
    report = {"tool": TOOL_INFO, "verb": "fuzz", **rep.to_dict()}
    _emit(report, args.output)
    if args.dump_dir is not None and rep.failures:
        args.dump_dir.mkdir(parents=True, exist_ok=True)
        for fail in rep.failures:
            path = args.dump_dir / f"failure_{fail['seed']}.json"
            path.write_text(canonical_json(fail["scenario"]), encoding="utf-8")
    print(
        f"fuzz {args.kind}: {rep.trials} trials, {len(rep.failures)} failures, "
        f"{rep.wall_time:.2f}s",
        file=sys.stderr,
    )
    return EXIT_VERIFIED if rep.ok else EXIT_REFUTED


def _cmd_oracle(args) -> int:
    rep = run_oracle_check(args.n, args.seed)
    report = {"tool": TOOL_INFO, "verb": "oracle", **rep.to_dict()}
    _emit(report, args.output)
    print(
        f"oracle: {rep.agreements}/{rep.trials} agree, "
        f"{len(rep.disagreements)} disagreements, {rep.wall_time:.2f}s",
        file=sys.stderr,
    )
    return EXIT_VERIFIED if rep.ok else EXIT_REFUTED


def _cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    if scenario.kind not in ("sweep", "theorem2d"):
        raise SchemaError(f"sweep needs a sweep/theorem2d scenario, got {scenario.kind!r}")
    overrides = {}
    if args.j is not None:
        overrides["j"] = args.j
    if args.k is not None:
        overrides["k"] = args.k
    if args.tol is not None:
        overrides["tol"] = args.tol
    if overrides or scenario.kind != "sweep":
        data = dict(scenario.raw)
        data["kind"] = "sweep"
        data.update(overrides)
        from .scenario import parse_scenario

        scenario = parse_scenario(data)
    report, code = run_scenario_obj(scenario)
    _emit(report, args.output)
    print(f"sweep: xi_star={report['sweep']['xi_star']}", file=sys.stderr)
    return code


def _cmd_repro3d(args) -> int:
    from .scenario import parse_scenario

    if args.example == "4.1":
        data = {"schema": "carousel/1", "kind": "sphere3_ex41",
                "side": args.side, "r": args.r}
    else:
        data = {"schema": "carousel/1", "kind": "sphere3_ex42", "t": args.t,
                "arc_radius_factor": args.factor, "side": args.side, "r": args.r}
    report, code = run_scenario_obj(parse_scenario(data))
    _emit(report, args.output)
    print(f"repro3d {args.example}: {report['verdict']}", file=sys.stderr)
    return code


def _cmd_render(args) -> int:
    scenario = load_scenario(args.scenario)
    text = render_svg(scenario)
    args.output.write_text(text, encoding="utf-8")
    print(f"render: wrote {args.output}", file=sys.stderr)
    return EXIT_VERIFIED


_COMMANDS = {
    "check": _cmd_check,
    "fuzz": _cmd_fuzz,
    "oracle": _cmd_oracle,
    "sweep": _cmd_sweep,
    "repro3d": _cmd_repro3d,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = _COMMANDS[args.verb](args)
    except (ParseError, SchemaError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CarouselError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(f"done in {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return code


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
