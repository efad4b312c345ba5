"""
Console entry point: plan -> simulate -> render, plus sync and study runs.

    tapeslicer plan design.json --tape copper-6.35 --substrate acrylic -o program.json
    tapeslicer simulate program.json --noise default --n 9 --seed 7 -o outcomes.json
    tapeslicer render outcomes.json -o outcomes.svg
    tapeslicer sync program.json --delay 0.02 -o trace.json
    tapeslicer study speed --n 100 -o speed.csv

Exit codes: 0 ok, 2 invalid input, 3 planning violation, 4 mechanics/placement failure,
5 protocol violation. Errors are written to stderr as JSON.
"""

import argparse
import json
import logging
import logging.config
import sys
from pathlib import Path

import sentry_sdk
from sentry_sdk.integrations.logging import LoggingIntegration

from core import settings
from common.enums import ToolpathMode
from common.exceptions import InvalidInputError
from common.utils import error_payload, read_json, write_json, load_with, utcnow
from modules.geometry.schemas import DesignSchema
from modules.mechanics.catalog import get_tape, get_substrate
from modules.planner import PlanParams, plan
from modules.planner.schemas import MotionProgramSchema, dump_program
from modules.simulator import batch_simulate, load_noise, dump_outcomes, load_outcomes
from modules.simulator.export import write_profiles_csv
from modules.controlsync import LatencyModel, run_timeline, feed_deficit, dump_trace
from modules.metrics import quality_report, dump_reports, run_study, study_frame
from modules.metrics.studies import STUDY_LEVELS, write_study_csv
from modules.render import render_program, render_outcome, write_svg
from cli.manifest import build_manifest, write_manifest

logger = logging.getLogger("cli")


def _load_program(path: str):
    return load_with(MotionProgramSchema(), read_json(path))


def cmd_plan(args: argparse.Namespace) -> dict:
    design = load_with(DesignSchema(), read_json(args.design))
    params = PlanParams(
        speed=args.speed,
        mode=args.mode,
        compaction_force=args.force,
        **({"min_radius": args.min_radius} if args.min_radius else {}),
    )
    program = plan(design, get_tape(args.tape), get_substrate(args.substrate), params)
    write_json(args.output, dump_program(program))
    return {"inputs": [args.design], "seed": None}


def cmd_simulate(args: argparse.Namespace) -> dict:
    program = _load_program(args.program)
    tape = get_tape(program.tape_ref)
    substrate = get_substrate(args.substrate or program.substrate_ref)
    noise = load_noise(args.noise, seed=args.seed)
    outcomes = batch_simulate(program, tape, substrate, noise, args.n)
    write_json(
        args.output,
        {
            "schema_version": settings.SCHEMA_VERSION,
            "outcomes": dump_outcomes(outcomes),
            "quality": dump_reports(quality_report(outcomes)),
        },
    )
    if args.csv:
        write_profiles_csv(outcomes, args.csv)
    return {"inputs": [args.program], "seed": args.seed}


def cmd_render(args: argparse.Namespace) -> dict:
    data = read_json(args.input)
    if isinstance(data, dict) and "steps" in data:
        svg = render_program(_load_program(args.input))
    elif isinstance(data, dict) and "outcomes" in data:
        outcomes = load_outcomes(data["outcomes"])
        if not outcomes:
            raise InvalidInputError(f"{args.input} holds no outcomes")
        svg = render_outcome(outcomes[0], scale=args.scale)
    elif isinstance(data, dict) and "placements" in data:
        svg = render_outcome(load_outcomes(data)[0], scale=args.scale)
    else:
        raise InvalidInputError(f"{args.input} is neither a motion program nor an outcome file")

    write_svg(svg, args.output)
    return {"inputs": [args.input], "seed": None}


def cmd_sync(args: argparse.Namespace) -> dict:
    program = _load_program(args.program)
    latency = LatencyModel(fixed_delay=args.delay, jitter_sigma=args.jitter, seed=args.seed)
    trace = run_timeline(program, latency)
    deficits = feed_deficit(trace, program)
    write_json(
        args.output,
        dump_trace(trace)
        | {
            "feed_deficit": [
                {"feature": feature, "deficit": deficit} for feature, deficit in deficits.items()
            ]
        },
    )
    return {"inputs": [args.program], "seed": args.seed}


def cmd_study(args: argparse.Namespace) -> dict:
    reports = run_study(
        args.study,
        get_tape(args.tape),
        get_substrate(args.substrate),
        load_noise(args.noise, seed=args.seed),
        n=args.n,
    )
    write_study_csv(study_frame(args.study, reports), args.output)
    return {"inputs": [], "seed": args.seed}


COMMANDS = {
    "plan": cmd_plan,
    "simulate": cmd_simulate,
    "render": cmd_render,
    "sync": cmd_sync,
    "study": cmd_study,
}


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a count >= 1, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tapeslicer", description=__doc__.split("\n")[1])
    commands = parser.add_subparsers(dest="command", required=True)

    plan_parser = commands.add_parser("plan", help="compile a design into a motion program")
    plan_parser.add_argument("design")
    plan_parser.add_argument("--tape", default=settings.DEFAULT_TAPE)
    plan_parser.add_argument("--substrate", default=settings.DEFAULT_SUBSTRATE)
    plan_parser.add_argument("--mode", choices=ToolpathMode.members(), default="cartesian")
    plan_parser.add_argument("--speed", type=float, default=settings.DEFAULT_SPEED, help="m/s")
    plan_parser.add_argument(
        "--force", type=float, default=settings.DEFAULT_COMPACTION_FORCE, help="compaction, N"
    )
    plan_parser.add_argument("--min-radius", type=float, default=None, help="m")
    plan_parser.add_argument("-o", "--output", required=True)

    simulate_parser = commands.add_parser("simulate", help="simulate tape placement")
    simulate_parser.add_argument("program")
    simulate_parser.add_argument(
        "--noise", default=settings.DEFAULT_NOISE_PROFILE, help="default | zero | path to JSON"
    )
    simulate_parser.add_argument("--n", type=_positive_int, default=1)
    simulate_parser.add_argument("--seed", type=int, default=0)
    simulate_parser.add_argument("--substrate", default=None)
    simulate_parser.add_argument("--csv", default=None, help="per-sample profile export")
    simulate_parser.add_argument("-o", "--output", required=True)

    render_parser = commands.add_parser("render", help="render a program or outcome as SVG")
    render_parser.add_argument("input")
    render_parser.add_argument("--scale", type=float, default=settings.SVG_DEVIATION_SCALE)
    render_parser.add_argument("-o", "--output", required=True)

    sync_parser = commands.add_parser("sync", help="robot/PCM synchronization timeline")
    sync_parser.add_argument("program")
    sync_parser.add_argument("--delay", type=float, default=0.0, help="I/O delay, s")
    sync_parser.add_argument("--jitter", type=float, default=0.0, help="I/O jitter sigma, s")
    sync_parser.add_argument("--seed", type=int, default=0)
    sync_parser.add_argument("-o", "--output", required=True)

    study_parser = commands.add_parser("study", help="quality study sweep, CSV table")
    study_parser.add_argument("study", choices=sorted(STUDY_LEVELS))
    study_parser.add_argument("--tape", default=settings.DEFAULT_TAPE)
    study_parser.add_argument("--substrate", default=settings.DEFAULT_SUBSTRATE)
    study_parser.add_argument("--noise", default=settings.DEFAULT_NOISE_PROFILE)
    study_parser.add_argument("--n", type=_positive_int, default=9)
    study_parser.add_argument("--seed", type=int, default=0)
    study_parser.add_argument("-o", "--output", required=True)
    return parser


def setup_logging():
    logging.config.dictConfig(settings.LOGGING)
    if settings.SENTRY_DSN:
        sentry_logging = LoggingIntegration(level=logging.INFO, event_level=logging.ERROR)
        sentry_sdk.init(settings.SENTRY_DSN, integrations=[sentry_logging])


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging()
    started_at = utcnow()
    options = {key: value for key, value in vars(args).items() if key != "output"}
    try:
        result = COMMANDS[args.command](args)
    except Exception as exc:
        payload, exit_code = error_payload(exc)
        sys.stderr.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
        return exit_code

    manifest = build_manifest(
        args.command,
        inputs=result["inputs"],
        output=str(Path(args.output)),
        options=options,
        started_at=started_at,
        seed=result["seed"],
    )
    write_manifest(manifest)
    logger.info("%s: output written to %s", args.command, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
