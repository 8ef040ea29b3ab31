"""Command-line entry point: gate tables, inference, reliability, comparisons and sweeps."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field
from pydantic import ValidationError as SchemaError

from . import enet, oracle, reliability, reporting
from .gates import build_table, nor_cpt
from .models import GateSpec, GateVariant, ProbabilityInterval
from .parsing import NetworkParseError, load_evidential, load_json, load_network
from .pipeline import SweepEvents, SweepParameter, run_sweep
from .validation import ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class CliSettings(BaseModel):
    """CLI defaults loaded from env or config file."""

    precision: int = Field(4, ge=0, le=17)
    workers: int = Field(1, ge=1)


def _load_settings(config_path: str | Path | None = None) -> CliSettings:
    config_payload: Dict[str, Any] = {}
    if config_path and Path(config_path).exists():
        payload = load_json(config_path)
        if not isinstance(payload, dict):
            kind = type(payload).__name__
            raise NetworkParseError(f"settings must be a JSON object, got {kind}", source=str(config_path))
        config_payload = payload

    values: Dict[str, Any] = {}
    for key in ("precision", "workers"):
        value = os.getenv(f"BELIEFNOR_{key.upper()}") or config_payload.get(key)
        if value is not None:
            values[key] = value
    return CliSettings(**values)


def _unit_interval(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {raw}") from exc
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"lambda must lie in [0, 1], got {raw}")
    return value


def _interval(raw: str) -> ProbabilityInterval:
    try:
        return ProbabilityInterval.parse(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid link {raw!r}: expected p or lo:hi") from exc


def _precision(args: argparse.Namespace, settings: CliSettings) -> int:
    return settings.precision if args.precision is None else args.precision


def cmd_gate(args: argparse.Namespace, settings: CliSettings) -> str:
    links: List[ProbabilityInterval] = args.link
    if args.variant is GateVariant.NOR and not args.eta:
        if not all(link.is_degenerate for link in links):
            raise ValidationError("the nor variant needs point link probabilities")
        table = nor_cpt([link.lower for link in links])
    else:
        spec = GateSpec(
            variant=args.variant,
            links=links,
            parent_ignorance=args.eta or [0.0] * len(links),
            optimism=args.optimism,
        )
        table = build_table(spec)
    return reporting.render_rows(reporting.gate_table_rows(table, _precision(args, settings)))


def cmd_infer(args: argparse.Namespace, settings: CliSettings) -> str:
    net = enet.from_file(load_evidential(args.file))
    precision = _precision(args, settings)
    summary = enet.report(net, args.node)
    rows = reporting.belief_rows(args.node, summary, precision)
    if args.verify:
        reference = oracle.joint_enumeration_marginal(net, args.node)
        rows += reporting.enumeration_rows(enet.marginal(net, args.node), reference, precision)
    return reporting.render_rows(rows)


def cmd_reliability(args: argparse.Namespace, settings: CliSettings) -> str:
    rn = load_network(args.file)
    if args.model == "bn":
        result = reliability.evaluate_bn(rn)
    else:
        if args.variant is GateVariant.OCBNOR and args.optimism is None:
            raise ValidationError("the oc variant requires --lambda")
        result = reliability.evaluate(rn, args.variant, args.optimism)
    note: Optional[str] = None
    if args.verify:
        intervals = reliability.edge_intervals(rn)
        if all(interval.is_degenerate for interval in intervals.values()):
            value = oracle.world_enumeration_reliability(rn)
            result = result.model_copy(update={"oracle_reliability": value})
        else:
            note = "defined only for point edge probabilities"
    return reporting.render_rows(reporting.reliability_rows(result, _precision(args, settings), note))


def cmd_compare(args: argparse.Namespace, settings: CliSettings) -> str:
    rn = load_network(args.file)
    reports = reliability.compare(rn, coefficient=args.optimism)
    return reporting.render_rows(reporting.compare_rows(reports, _precision(args, settings)))


def _log_event(event: Dict) -> None:
    logger.info("sweep event %s", json.dumps(event, sort_keys=True))


def cmd_sweep(args: argparse.Namespace, settings: CliSettings) -> str:
    rn = load_network(args.file)
    events = SweepEvents(sinks=[_log_event])
    points = run_sweep(
        rn,
        args.parameter,
        args.start,
        args.stop,
        args.steps,
        variant=args.variant,
        coefficient=args.optimism,
        edge=args.edge,
        workers=args.workers or settings.workers,
        events=events,
    )
    text = reporting.sweep_csv([(p.param, p.report) for p in points], _precision(args, settings))
    if args.out:
        Path(args.out).write_text(text)
        return ""
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beliefnor", description="Belief Noisy-OR gates and network reliability")
    parser.add_argument("--config", help="JSON file with default settings")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level on stderr")

    printing = argparse.ArgumentParser(add_help=False)
    printing.add_argument("--precision", type=int, default=None, help="decimal places (default 4)")

    variants = [variant.value for variant in GateVariant]
    sub = parser.add_subparsers(dest="command", required=True)

    gate = sub.add_parser("gate", parents=[printing], help="print a conditional mass table")
    gate.add_argument("--variant", type=GateVariant, choices=list(GateVariant), metavar="{" + ",".join(variants) + "}", required=True)
    gate.add_argument("--link", type=_interval, action="append", required=True, help="p or lo:hi, once per parent")
    gate.add_argument("--eta", type=_unit_interval, action="append", help="parent ignorance mass, once per parent")
    gate.add_argument("--lambda", dest="optimism", type=_unit_interval, help="optimism coefficient for oc")
    gate.set_defaults(handler=cmd_gate)

    infer = sub.add_parser("infer", parents=[printing], help="marginal of one node of an evidential network")
    infer.add_argument("file")
    infer.add_argument("--node", required=True)
    infer.add_argument("--verify", action="store_true", help="cross-check with joint enumeration")
    infer.set_defaults(handler=cmd_infer)

    rel = sub.add_parser("reliability", parents=[printing], help="two-terminal reliability of a network file")
    rel.add_argument("file")
    rel.add_argument("--variant", type=GateVariant, choices=list(GateVariant), metavar="{" + ",".join(variants) + "}", default=GateVariant.LC_BNOR)
    rel.add_argument("--lambda", dest="optimism", type=_unit_interval)
    rel.add_argument("--model", choices=["bnor", "bn"], default="bnor")
    rel.add_argument("--verify", action="store_true", help="cross-check with world enumeration")
    rel.set_defaults(handler=cmd_reliability)

    cmp_ = sub.add_parser("compare", parents=[printing], help="side-by-side reliability under every variant")
    cmp_.add_argument("file")
    cmp_.add_argument("--lambda", dest="optimism", type=_unit_interval, default=0.6)
    cmp_.set_defaults(handler=cmd_compare)

    sweep = sub.add_parser("sweep", parents=[printing], help="CSV of the system state over a parameter range")
    sweep.add_argument("file")
    sweep.add_argument("--parameter", type=SweepParameter, choices=list(SweepParameter), metavar="{lambda,interval-width}", required=True)
    sweep.add_argument("--start", type=float, default=0.0)
    sweep.add_argument("--stop", type=float, default=1.0)
    sweep.add_argument("--steps", type=int, default=11)
    sweep.add_argument("--variant", type=GateVariant, choices=list(GateVariant), metavar="{" + ",".join(variants) + "}")
    sweep.add_argument("--lambda", dest="optimism", type=_unit_interval, help="coefficient for oc in width sweeps")
    sweep.add_argument("--edge", help="edge whose interval is widened")
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--out", help="write the CSV here instead of stdout")
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args.verbose)

    handler: Callable[[argparse.Namespace, CliSettings], str] = args.handler
    try:
        settings = _load_settings(args.config)
        output = handler(args, settings)
    except NetworkParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"error: {exc.errors()[0].get('msg', exc)}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
