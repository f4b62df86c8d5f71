"""Command line interface.

Subcommands: offset | envelope | singular | contour | gallery.
Exit codes: 0 success, 2 invalid scenario, 3 numerical failure (with a
diagnostics JSON object on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import InvalidScenarioError, NumericalError, OvalkitError
from .scenario import GALLERY_SCENARIO, emit_json, run_scenario, validate_scenario
from .svg import emit_svg


def _curve_payload(args) -> dict:
    if args.curve == "cayley":
        return {"kind": "cayley", "a": args.a, "b": args.b}
    if args.curve == "ellipse":
        return {"kind": "ellipse", "a": args.a, "b": args.b}
    if args.curve == "circle":
        return {"kind": "circle", "r": args.r}
    return {"kind": "preset", "name": args.preset}


def _parse_range(text):
    if text is None:
        return None
    sep = ":" if ":" in text else ","
    lo, hi = text.split(sep, 1)
    return [float(lo), float(hi)]


def _scenario_payload(args, command: str) -> dict:
    return {
        "curve": _curve_payload(args),
        "d": [float(v) for v in args.d.split(",")] if args.d else [],
        "side": args.side,
        "t_range": _parse_range(args.range),
        "samples": args.samples,
        "singular": command == "singular",
        "envelope": command == "envelope",
        "contour": command == "contour",
        "format": args.format,
    }


def _add_common(sub):
    sub.add_argument("--curve", choices=["cayley", "ellipse", "circle", "preset"], default="cayley")
    sub.add_argument("--a", type=float, default=1.0, help="half focal distance / semi-axis")
    sub.add_argument("--b", type=float, default=1.0, help="level value / semi-axis")
    sub.add_argument("--r", type=float, default=1.0, help="circle radius")
    sub.add_argument("--preset", default="figure-eight")
    sub.add_argument("--d", default="", help="comma separated offset distances")
    sub.add_argument("--side", choices=["left", "right", "both"], default="both")
    sub.add_argument("--samples", type=int, default=1000)
    sub.add_argument("--range", default=None, help="parameter range lo:hi")
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--format", choices=["json", "svg"], default="json")


def _emit(doc, fmt: str, out):
    text = emit_json(doc) if fmt == "json" else emit_svg(doc)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _run(payload: dict, out):
    scenario = validate_scenario(payload)
    doc = run_scenario(scenario)
    _emit(doc, scenario.format, out)


def _gallery(args) -> int:
    """Reproduce the figure series: the d-sweep of the unit lemniscate with
    its singular points, the four implicit shape classes, and the ellipse
    offset/envelope pair."""
    out_dir = Path(args.out or "gallery")
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [("lemniscate-offsets", GALLERY_SCENARIO.to_dict())]
    for b in (2.0, 3.0, 4.0, 6.0):
        jobs.append(
            (
                f"oval-shape-b{b:g}",
                {
                    "curve": {"kind": "cayley", "a": 3.0, "b": b},
                    "d": [],
                    "samples": 800,
                    "contour": True,
                },
            )
        )
    jobs.append(
        (
            "ellipse-offset-envelope",
            {
                "curve": {"kind": "ellipse", "a": 5.0, "b": 3.0},
                "d": [1.0],
                "samples": 1000,
                "envelope": True,
            },
        )
    )
    jobs.append(
        (
            "ellipse-inner-cusps",
            {
                "curve": {"kind": "ellipse", "a": math.sqrt(17.0), "b": 1.0},
                "d": [1.0],
                "samples": 1500,
                "singular": True,
            },
        )
    )
    for name, payload in jobs:
        doc = run_scenario(validate_scenario(payload))
        (out_dir / f"{name}.json").write_text(emit_json(doc) + "\n")
        if args.format == "svg":
            (out_dir / f"{name}.svg").write_text(emit_svg(doc) + "\n")
    sys.stdout.write(f"wrote {len(jobs)} documents to {out_dir}\n")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="ovalkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("offset", "envelope", "singular", "contour", "gallery"):
        _add_common(sub.add_parser(name))
    args = parser.parse_args(argv)

    try:
        if args.command == "gallery":
            return _gallery(args)
        _run(_scenario_payload(args, args.command), args.out)
        return 0
    except InvalidScenarioError as exc:
        sys.stderr.write(json.dumps({"error": {"field": exc.field, "message": exc.message}}) + "\n")
        return 2
    except NumericalError as exc:
        sys.stderr.write(
            json.dumps({"error": {"message": str(exc), "diagnostics": exc.diagnostics}}) + "\n"
        )
        return 3
    except OvalkitError as exc:
        sys.stderr.write(json.dumps({"error": {"message": str(exc)}}) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
