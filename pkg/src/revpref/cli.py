"""Command-line surface: ``revpref <check|index|robust|compensate|panel|synth>``.

Exit codes are uniform across subcommands: 0 for success (or a passing
check), 1 for a semantically failing check, 2 for usage or input
errors. Output is JSON by default; ``--format csv`` is supported where
tabular output makes sense (index, panel). Observation indices in
output are 1-based, matching the ``t`` column of the CSV schema.
"""

from __future__ import annotations

import argparse
import csv as csv_module
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .afriat import money_pump
from .classes import ProbabilityVector, check_homothetic, check_oceu
from .dataset import Bundle, PurchaseDataset, parse_csv, serialize_csv
from .errors import RevprefError
from .rational import as_fraction
from .relations import EfficiencyVector, check_e_garp, check_garp, check_sarp
from .report import (
    INDEX_CHOICES,
    SCHEMA_VERSION,
    build_index_report,
    panel_json,
    panel_summary,
    rational_json,
    report_json,
)
from .synth import GeneratorSpec, UtilityFamily, synthesize
from .welfare import (
    LOSSES,
    compensation_levels,
    compensation_regions,
    robust_query,
)

CHECKS = ("garp", "sarp", "egarp", "homothetic", "oceu")


def _load(path: str) -> PurchaseDataset:
    return parse_csv(Path(path).read_bytes())


def _parse_bundle(text: str) -> Bundle:
    return Bundle(tuple(as_fraction(part) for part in text.split(",")))


def _parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(as_fraction(part) for part in text.split(","))


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_check(args) -> int:
    dataset = _load(args.path)
    payload: dict = {"schema_version": SCHEMA_VERSION, "check": args.which}
    if args.which == "garp":
        result = check_garp(dataset)
        passed = result.satisfied
        if result.witness is not None:
            payload["witness"] = {
                "observations": [t + 1 for t in result.witness.nodes],
                "strict_links": list(result.witness.strict_flags),
            }
            pump = money_pump(dataset)
            if pump is not None:
                payload["money_pump_cost"] = rational_json(pump.cost)
    elif args.which == "sarp":
        passed = check_sarp(dataset)
    elif args.which == "egarp":
        if args.e is None:
            raise ValueError("egarp requires --e")
        levels = _parse_fraction_list(args.e)
        efficiency = (
            levels[0]
            if len(levels) == 1
            else EfficiencyVector(levels)
        )
        passed = check_e_garp(dataset, efficiency)
        payload["e"] = args.e
    elif args.which == "homothetic":
        passed = check_homothetic(dataset)
    else:
        if args.pi is None:
            raise ValueError("oceu requires --pi")
        passed = check_oceu(dataset, ProbabilityVector(_parse_fraction_list(args.pi)))
        payload["pi"] = args.pi
    payload["satisfied"] = passed
    _emit(payload)
    return 0 if passed else 1


def _index_csv(report) -> str:
    buffer = io.StringIO()
    writer = csv_module.writer(buffer)
    writer.writerow(["field", "value", "decimal"])
    data = report_json(report)
    for key in ("dataset_id", "T", "L", "garp", "cycle_class", "houtman_maks", "homothetic"):
        writer.writerow([key, data[key], ""])
    for key in ("afriat", "varian", "swaps"):
        cell = data[key]
        if cell is None:
            writer.writerow([key, "", ""])
        else:
            writer.writerow([key, cell["fraction"], cell["decimal"]])
    return buffer.getvalue()


def _cmd_index(args) -> int:
    dataset = _load(args.path)
    report = build_index_report(dataset, Path(args.path).stem, which=args.which)
    if args.format == "csv":
        sys.stdout.write(_index_csv(report))
    else:
        payload = report_json(report)
        payload["schema_version"] = SCHEMA_VERSION
        _emit(payload)
    return 0


def _cmd_robust(args) -> int:
    dataset = _load(args.path)
    a = _parse_bundle(args.bundle_a)
    b = _parse_bundle(args.bundle_b)
    result = robust_query(dataset, args.loss, a, b)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "loss": args.loss,
            "forward": result.forward,
            "backward": result.backward,
            "verdict": result.verdict.value,
        }
    )
    return 0


def _cmd_compensate(args) -> int:
    dataset = _load(args.path)
    reduction = as_fraction(args.reduction)
    cap = as_fraction(args.cap)
    result = compensation_levels(
        dataset, args.loss, args.good, reduction=reduction, cap=cap
    )
    if args.regions is not None:
        regions = compensation_regions(
            dataset, args.loss, args.good, reduction=reduction, cap=cap
        )
        with open(args.regions, "w", newline="") as handle:
            writer = csv_module.writer(handle)
            writer.writerow(["k_lo", "k_hi", "open_interval", "verdict"])
            for region in regions:
                writer.writerow(
                    [
                        str(region.lower),
                        str(region.upper),
                        int(region.open_interval),
                        region.result.verdict.value,
                    ]
                )
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "loss": args.loss,
            "good": args.good,
            "reduction": rational_json(reduction),
            "cap": rational_json(cap),
            "k_weak": "over_cap" if result.k_weak is None else rational_json(result.k_weak),
            "k_strong": "over_cap" if result.k_strong is None else rational_json(result.k_strong),
        }
    )
    return 0


def _panel_file(path: str) -> dict:
    try:
        dataset = parse_csv(Path(path).read_bytes())
        report = build_index_report(dataset, Path(path).stem, which="all")
        return {"ok": True, "report": report}
    except (RevprefError, OSError, ValueError) as exc:
        return {"ok": False, "path": path, "error": str(exc)}


def _panel_csv(summary) -> str:
    buffer = io.StringIO()
    writer = csv_module.writer(buffer)
    writer.writerow(
        ["dataset_id", "T", "L", "garp", "cycle_class", "afriat", "varian", "houtman_maks", "swaps"]
    )
    for report in summary.reports:
        writer.writerow(
            [
                report.dataset_id,
                report.T,
                report.L,
                report.garp,
                report.cycle_class,
                str(report.afriat),
                str(report.varian),
                report.houtman_maks,
                "" if report.swaps is None else str(report.swaps),
            ]
        )
    return buffer.getvalue()


def _cmd_panel(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"{directory} is not a directory")
    files = sorted(str(p) for p in directory.glob("*.csv"))
    if not files:
        raise FileNotFoundError(f"no CSV files in {directory}")
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            outcomes = list(pool.map(_panel_file, files))
    else:
        outcomes = [_panel_file(path) for path in files]
    reports = [o["report"] for o in outcomes if o["ok"]]
    failures = [
        {"path": o["path"], "error": o["error"]} for o in outcomes if not o["ok"]
    ]
    if not reports:
        raise RevprefError("every file in the panel failed to process")
    summary = panel_summary(reports)
    if args.format == "csv":
        sys.stdout.write(_panel_csv(summary))
    else:
        _emit(panel_json(summary, failures))
    return 0


def _cmd_synth(args) -> int:
    params = _parse_fraction_list(args.params)
    noise = _parse_fraction_list(args.noise)
    price_range = _parse_fraction_list(args.price_range)
    if len(noise) != 2 or len(price_range) != 2:
        raise ValueError("--noise and --price-range take two comma-separated values")
    spec = GeneratorSpec(
        T=args.T,
        L=args.L,
        utility_family=UtilityFamily(args.family),
        utility_params=params,
        efficiency_noise=(noise[0], noise[1]),
        price_range=(price_range[0], price_range[1]),
        seed=args.seed,
    )
    text = serialize_csv(synthesize(spec))
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revpref",
        description="Exact revealed-preference analysis of purchase datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run a consistency test")
    p_check.add_argument("which", choices=CHECKS)
    p_check.add_argument("path")
    p_check.add_argument("--e", help="efficiency level(s) for egarp: scalar or comma list")
    p_check.add_argument("--pi", help="state probabilities for oceu, comma separated")
    p_check.set_defaults(handler=_cmd_check)

    p_index = sub.add_parser("index", help="compute goodness-of-fit indices")
    p_index.add_argument("path")
    p_index.add_argument("--which", choices=INDEX_CHOICES, default="all")
    p_index.add_argument("--format", choices=("json", "csv"), default="json")
    p_index.set_defaults(handler=_cmd_index)

    p_robust = sub.add_parser("robust", help="robust preference query")
    p_robust.add_argument("path")
    p_robust.add_argument("loss", choices=LOSSES)
    p_robust.add_argument("bundle_a", help='first bundle, e.g. "4,4"')
    p_robust.add_argument("bundle_b", help='second bundle, e.g. "2,5"')
    p_robust.set_defaults(handler=_cmd_robust)

    p_comp = sub.add_parser("compensate", help="weak/strong compensation levels")
    p_comp.add_argument("path")
    p_comp.add_argument("--loss", choices=LOSSES, required=True)
    p_comp.add_argument("--good", type=int, default=0, help="0-based good index")
    p_comp.add_argument("--reduction", default="1/4")
    p_comp.add_argument("--cap", default="1")
    p_comp.add_argument(
        "--regions", help="also write the per-uplift verdict partition to this CSV"
    )
    p_comp.set_defaults(handler=_cmd_compensate)

    p_panel = sub.add_parser("panel", help="batch-analyze a directory of CSVs")
    p_panel.add_argument("directory")
    p_panel.add_argument("--workers", type=int, default=1)
    p_panel.add_argument("--format", choices=("json", "csv"), default="json")
    p_panel.set_defaults(handler=_cmd_panel)

    p_synth = sub.add_parser("synth", help="generate a synthetic dataset")
    p_synth.add_argument("out", help="output CSV path, or - for stdout")
    p_synth.add_argument("--T", type=int, required=True)
    p_synth.add_argument("--L", type=int, required=True)
    p_synth.add_argument(
        "--family", choices=[f.value for f in UtilityFamily], default="cobb-douglas"
    )
    p_synth.add_argument("--params", required=True, help="comma-separated weights")
    p_synth.add_argument("--noise", default="1,1", help="efficiency bounds lo,hi")
    p_synth.add_argument("--price-range", dest="price_range", default="1,4")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.set_defaults(handler=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (RevprefError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
