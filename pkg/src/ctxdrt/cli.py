"""Batch command line: parse, resolve, readings, extract, prove, compare.

Exit codes: 0 success; 1 no admissible reading; 2 parse or validation
error; 3 at least one verdict undecided within bounds.  JSON output is
stable-keyed and byte-identical across runs for a fixed input and
configuration (schema version "ctxdrt/1").
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Optional

from .drs import DrsError, path_str, validate
from .lcon import context_sharing_depth, extract
from .models import ResourceLimit
from .projection import (
    BackgroundTheory,
    NoAdmissibleReading,
    ProjectionError,
    candidate_readings,
    eligible_alpha_paths,
    project,
    resolve_alpha,
)
from .tableau import (
    OPEN_BOUNDED,
    Bounds,
    compare_cost,
    default_task_prover,
    prove_lcon,
)
from .text import ParseError, parse_drs, parse_lcon, print_drs, print_lcon

__all__ = ["RunConfig", "run", "emit_json", "main"]

SCHEMA_VERSION = "ctxdrt/1"

EXIT_OK = 0
EXIT_NO_READING = 1
EXIT_INPUT_ERROR = 2
EXIT_UNKNOWN = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    background: Optional[str] = None
    gamma_limit: int = 5
    depth_limit: int = 20000
    model_bound: int = 3
    json_output: bool = False
    no_filter: bool = False

    def __post_init__(self) -> None:
        if self.gamma_limit < 0 or self.depth_limit <= 0 or self.model_bound <= 0:
            raise ValueError("limits must be positive")

    @property
    def bounds(self) -> Bounds:
        return Bounds(self.gamma_limit, self.depth_limit)


def emit_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_background(path: Optional[str]) -> BackgroundTheory:
    if path is None:
        return BackgroundTheory(())
    text = _read_file(path)
    postulates = []
    for block in re.split(r"\n\s*\n", text):
        stripped = "\n".join(
            line for line in block.splitlines() if line.split("#", 1)[0].strip()
        )
        if stripped.strip():
            postulates.append(parse_drs(block))
    return BackgroundTheory(tuple(postulates))


def _reading_json(reading, verdict=None) -> dict:
    payload = {
        "site": reading.site_kind,
        "path": path_str(reading.site_path),
        "bindings": {s.name: t.name for s, t in reading.resolution.bindings},
        "drs": print_drs(reading.result),
    }
    if verdict is not None:
        payload["informativity"] = verdict.informative
        payload["consistency"] = verdict.consistent
    return payload


def _blocked_json(blocked) -> dict:
    return {
        "site": blocked.site_kind,
        "path": path_str(blocked.site_path),
        "bindings": {s.name: t.name for s, t in blocked.resolution.bindings},
        "reason": blocked.reason,
    }


def _cmd_parse(config: RunConfig, out: list[str]) -> int:
    box = parse_drs(_read_file(config.inputs[0]))
    report = validate(box)
    if config.json_output:
        out.append(
            emit_json(
                {
                    "version": SCHEMA_VERSION,
                    "command": "parse",
                    "drs": print_drs(box),
                    "pure": report.pure,
                    "free": sorted(r.name for r in report.free),
                }
            )
        )
    else:
        out.append(print_drs(box) + "\n")
    return EXIT_OK


def _cmd_resolve(config: RunConfig, out: list[str]) -> int:
    box = parse_drs(_read_file(config.inputs[0]))
    alphas = []
    for path in eligible_alpha_paths(box):
        resolutions = resolve_alpha(path, box)
        alphas.append(
            {
                "path": path_str(path),
                "resolutions": [
                    {s.name: t.name for s, t in r.bindings} for r in resolutions
                ],
            }
        )
    if config.json_output:
        out.append(
            emit_json({"version": SCHEMA_VERSION, "command": "resolve", "alphas": alphas})
        )
    else:
        if not alphas:
            out.append("no anaphoric conditions\n")
        for entry in alphas:
            out.append("alpha at %s:\n" % entry["path"])
            if not entry["resolutions"]:
                out.append("  unresolvable (projects)\n")
            for res in entry["resolutions"]:
                out.append(
                    "  %s\n" % ", ".join("%s->%s" % kv for kv in sorted(res.items()))
                )
    return EXIT_OK


def _cmd_readings(config: RunConfig, out: list[str]) -> int:
    box = parse_drs(_read_file(config.inputs[0]))
    bg = _load_background(config.background)
    if config.no_filter:
        readings = []
        blocked_all = []
        for path in eligible_alpha_paths(box):
            try:
                admitted, blocked = candidate_readings(box, path)
            except ProjectionError:
                continue
            readings.extend(admitted)
            blocked_all.extend(blocked)
        if config.json_output:
            out.append(
                emit_json(
                    {
                        "version": SCHEMA_VERSION,
                        "command": "readings",
                        "filtering": False,
                        "readings": [_reading_json(r) for r in readings],
                        "blocked": [_blocked_json(b) for b in blocked_all],
                    }
                )
            )
        else:
            for r in readings:
                out.append("%s: %s\n" % (r.ref, print_drs(r.result)))
            for b in blocked_all:
                out.append("blocked %s@%s: %s\n" % (b.site_kind, path_str(b.site_path), b.reason))
        return EXIT_OK

    prover = default_task_prover(config.bounds)
    try:
        outcome = project(box, bg, prover, config.model_bound)
    except NoAdmissibleReading as failure:
        unknown = any(c.verdict.unknown for c in failure.checks)
        if config.json_output:
            out.append(
                emit_json(
                    {
                        "version": SCHEMA_VERSION,
                        "command": "readings",
                        "readings": [],
                        "checked": [
                            _reading_json(c.reading, c.verdict) for c in failure.checks
                        ],
                    }
                )
            )
        else:
            out.append("no admissible reading\n")
        return EXIT_UNKNOWN if unknown else EXIT_NO_READING

    admitted = [c for c in outcome.checks if c.verdict.admitted]
    rejected = [c for c in outcome.checks if not c.verdict.admitted]
    if config.json_output:
        out.append(
            emit_json(
                {
                    "version": SCHEMA_VERSION,
                    "command": "readings",
                    "readings": [_reading_json(c.reading, c.verdict) for c in admitted],
                    "filtered": [_reading_json(c.reading, c.verdict) for c in rejected],
                    "blocked": [_blocked_json(b) for b in outcome.blocked],
                    "results": [
                        {
                            "drs": print_drs(r.drs),
                            "trail": [
                                {"alpha": path_str(s.alpha_path), "action": s.action, "detail": s.detail}
                                for s in r.trail
                            ],
                        }
                        for r in outcome.survivors
                    ],
                }
            )
        )
    else:
        for r in outcome.survivors:
            steps = "; ".join("%s %s" % (s.action, s.detail) for s in r.trail)
            out.append("%s\n  via %s\n" % (print_drs(r.drs), steps or "no anaphora"))
        for c in rejected:
            out.append(
                "filtered %s: informativity=%s consistency=%s\n"
                % (c.reading.ref, c.verdict.informative, c.verdict.consistent)
            )
    return EXIT_UNKNOWN if outcome.any_unknown else EXIT_OK


def _cmd_extract(config: RunConfig, out: list[str]) -> int:
    box = parse_drs(_read_file(config.inputs[0]))
    bg = _load_background(config.background)
    extraction = extract(box, bg)
    if extraction.formula is None:
        if config.json_output:
            out.append(
                emit_json({"version": SCHEMA_VERSION, "command": "extract", "tasks": []})
            )
        else:
            out.append("no tasks\n")
        return EXIT_OK
    stats = context_sharing_depth(extraction.formula)
    if config.json_output:
        out.append(
            emit_json(
                {
                    "version": SCHEMA_VERSION,
                    "command": "extract",
                    "formula": print_lcon(extraction.formula),
                    "tasks": [
                        {
                            "tag": t.tag,
                            "position": list(t.position),
                            "conclusion": print_drs(t.conclusion),
                            "readings": [r.ref for r in t.readings],
                        }
                        for t in extraction.tasks
                    ],
                    "sharing": {
                        "inWrappers": stats.in_wrappers,
                        "contextConditions": stats.context_conditions,
                        "duplicatedConditions": stats.duplicated_conditions,
                    },
                }
            )
        )
    else:
        out.append(print_lcon(extraction.formula) + "\n")
        for t in extraction.tasks:
            out.append(
                "%s: %s  [%s]\n"
                % (t.tag, print_drs(t.conclusion), ", ".join(r.ref for r in t.readings))
            )
    return EXIT_OK


def _cmd_prove(config: RunConfig, out: list[str]) -> int:
    formula = parse_lcon(_read_file(config.inputs[0]))
    verdict, stats = prove_lcon(formula, None, config.bounds)
    if config.json_output:
        out.append(
            emit_json(
                {
                    "version": SCHEMA_VERSION,
                    "command": "prove",
                    "verdicts": dict(verdict.statuses),
                    "stats": stats.as_json(),
                }
            )
        )
    else:
        for tag, status in verdict.statuses:
            out.append("%s: %s\n" % (tag, status))
        out.append("rule applications: %d\n" % stats.rule_applications)
    bounded = any(status == OPEN_BOUNDED for _, status in verdict.statuses)
    return EXIT_UNKNOWN if bounded else EXIT_OK


def _cmd_compare(config: RunConfig, out: list[str]) -> int:
    box = parse_drs(_read_file(config.inputs[0]))
    bg = _load_background(config.background)
    report = compare_cost(box, bg, config.bounds)
    if config.json_output:
        out.append(
            emit_json(
                {
                    "version": SCHEMA_VERSION,
                    "command": "compare",
                    "shared": {
                        **report.shared_stats.as_json(),
                        "verdicts": dict(report.shared_verdicts),
                    },
                    "naive": {
                        **report.naive_stats.as_json(),
                        "verdicts": dict(report.naive_verdicts),
                    },
                    "ratio": dict(report.per_condition_ratio),
                    "overallRatio": report.overall_ratio,
                    "agreement": report.agreement,
                }
            )
        )
    else:
        out.append("shared rule applications: %d\n" % report.shared_stats.rule_applications)
        out.append("naive rule applications: %d\n" % report.naive_stats.rule_applications)
        for cond, ratio in report.per_condition_ratio:
            out.append("  %s: %.1fx\n" % (cond, ratio))
        out.append("overall context expansion ratio: %.2f\n" % report.overall_ratio)
        out.append("verdict agreement: %s\n" % report.agreement)
    statuses = [s for _, s in report.shared_verdicts] + [s for _, s in report.naive_verdicts]
    return EXIT_UNKNOWN if OPEN_BOUNDED in statuses else EXIT_OK


_COMMANDS = {
    "parse": _cmd_parse,
    "resolve": _cmd_resolve,
    "readings": _cmd_readings,
    "extract": _cmd_extract,
    "prove": _cmd_prove,
    "compare": _cmd_compare,
}


def run(config: RunConfig) -> tuple[int, str, str]:
    """Execute one command; returns (exit code, stdout text, stderr text)."""
    out: list[str] = []
    try:
        code = _COMMANDS[config.command](config, out)
    except FileNotFoundError as exc:
        return EXIT_INPUT_ERROR, "", "error: no such file: %s\n" % exc.filename
    except ParseError as exc:
        return (
            EXIT_INPUT_ERROR,
            "",
            "error: %s (offsets %d..%d)\n" % (exc.message, exc.span.start, exc.span.end),
        )
    except (DrsError, ProjectionError, ResourceLimit, ValueError) as exc:
        return EXIT_INPUT_ERROR, "", "error: %s\n" % exc
    return code, "".join(out), ""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctxdrt",
        description="Presupposition projection over discourse boxes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, with_bg, with_bounds in [
        ("parse", False, False),
        ("resolve", False, False),
        ("readings", True, True),
        ("extract", True, False),
        ("prove", False, True),
        ("compare", True, True),
    ]:
        cmd = sub.add_parser(name)
        cmd.add_argument("input", help="input file (.drs, or .lcon for prove)")
        cmd.add_argument("--json", action="store_true", dest="json_output")
        if with_bg:
            cmd.add_argument("--bg", dest="background", default=None)
        if with_bounds:
            cmd.add_argument("--gamma", type=int, default=5, dest="gamma_limit")
            cmd.add_argument("--depth", type=int, default=20000, dest="depth_limit")
        if name == "readings":
            cmd.add_argument("--model-size", type=int, default=3, dest="model_bound")
            cmd.add_argument("--no-filter", action="store_true", dest="no_filter")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        inputs=(args.input,),
        background=getattr(args, "background", None),
        gamma_limit=getattr(args, "gamma_limit", 5),
        depth_limit=getattr(args, "depth_limit", 20000),
        model_bound=getattr(args, "model_bound", 3),
        json_output=args.json_output,
        no_filter=getattr(args, "no_filter", False),
    )
    code, stdout, stderr = run(config)
    if stdout:
        sys.stdout.write(stdout)
    if stderr:
        sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
