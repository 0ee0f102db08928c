"""Command-line entry point: ``run``, ``sweep`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 argument error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .protocol import ProtocolConfig, TeleportReport, teleport
from .sweep import METRICS, NU_SOURCES, SweepGrid, sweep, to_csv
from .transforms import B2_INPUT_MODES, Convention

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3

CONVENTIONS = [c.value for c in Convention]


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _matrix(m: np.ndarray) -> list[list[float]]:
    return [[float(v) for v in row] for row in np.asarray(m, dtype=float)]


def report_to_dict(report: TeleportReport) -> dict:
    cfg = report.config
    return {
        "config": {
            "q": cfg.source.q,
            "eta": cfg.source.eta,
            "r": cfg.amplifier.r,
            "phi": cfg.amplifier.phi,
            "convention": cfg.convention.value,
            "b2_input_modes": list(B2_INPUT_MODES),
        },
        "sigma_in": _matrix(report.sigma_in),
        "sigma_shared": _matrix(report.sigma_shared),
        "sigma_out": _matrix(report.sigma_out),
        "metrics": {
            "nu_pipeline": _jsonable(report.nu_pipeline),
            "nu_closed_form": _jsonable(report.nu_closed_form),
            "log_negativity": _jsonable(report.log_negativity),
            "fidelity": _jsonable(report.fidelity),
        },
        "residuals": {k: _jsonable(v) for k, v in sorted(report.residuals.items())},
    }


def report_to_text(report: TeleportReport) -> str:
    cfg = report.config
    lines = [
        f"q = {cfg.source.q!r}  eta = {cfg.source.eta!r}  r = {cfg.amplifier.r!r}  phi = {cfg.amplifier.phi!r}",
        f"convention: {cfg.convention.value}",
        f"B2 input modes: {', '.join(map(str, B2_INPUT_MODES))}",
    ]
    for name, m in (("sigma_in (7,8)", report.sigma_in), ("sigma_shared (5,6,15,16)", report.sigma_shared), ("sigma_out (13,14)", report.sigma_out)):
        lines.append(f"{name}:")
        lines.extend("  " + "  ".join(repr(float(v)) for v in row) for row in m)
    lines += [
        f"nu_minus (pipeline):    {report.nu_pipeline!r}",
        f"nu_minus (closed form): {report.nu_closed_form!r}",
        f"log_negativity [bits]:  {report.log_negativity!r}",
        f"fidelity:               {report.fidelity!r}",
    ]
    lines += [f"residual {k}: {v!r}" for k, v in sorted(report.residuals.items())]
    lines.append("note: the fidelity formula uses 1/4 determinant offsets, so F < 1 even for identical states")
    return "\n".join(lines) + "\n"


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8", newline="\n")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--convention", choices=CONVENTIONS, default=Convention.AS_PRINTED.value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tmsteleport", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="teleport one configuration and print the report")
    run.add_argument("--q", type=float, default=0.5, help="source squeezing")
    run.add_argument("--eta", type=float, default=math.pi / 4, help="source phase [rad]")
    run.add_argument("--r", type=float, default=0.5, help="teleportation amplifier squeezing")
    run.add_argument("--phi", type=float, default=math.pi / 8, help="amplifier phase [rad]")
    _add_params(run)
    run.add_argument("--format", choices=["text", "machine"], default="text")
    run.add_argument("--out", help="write the report here instead of stdout")

    sw = sub.add_parser("sweep", help="evaluate a (q, r) grid and write CSV")
    for name in ("q", "r"):
        sw.add_argument(f"--{name}-min", type=float, default=0.0)
        sw.add_argument(f"--{name}-max", type=float, default=2.0)
        sw.add_argument(f"--{name}-steps", type=int, default=41)
    sw.add_argument("--eta", type=float, default=math.pi / 4)
    sw.add_argument("--phi", type=float, default=math.pi / 8)
    _add_params(sw)
    sw.add_argument("--metric", choices=METRICS, default="both")
    sw.add_argument("--nu-source", choices=NU_SOURCES, default="pipeline", help="spectrum used for nu_minus and E_N")
    sw.add_argument("--jobs", type=int, default=1, help="worker threads; output is identical for any value")
    sw.add_argument("--out", help="CSV path (default: stdout)")

    ver = sub.add_parser("verify", help="run the self-check suite")
    ver.add_argument("--format", choices=["text", "machine"], default="text")
    ver.add_argument("--out", help="write the machine report here (default: stdout)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            config = ProtocolConfig.from_params(args.q, args.eta, args.r, args.phi, args.convention)
        elif args.command == "sweep":
            grid = SweepGrid(
                args.q_min, args.q_max, args.q_steps, args.r_min, args.r_max, args.r_steps,
                args.eta, args.phi, args.convention,
            )
            if args.jobs < 1:
                raise ValueError("--jobs must be >= 1")
    except ValueError as exc:
        parser.error(str(exc))

    try:
        if args.command == "run":
            report = teleport(config)
            if args.format == "machine":
                text = json.dumps(report_to_dict(report), indent=2) + "\n"
            else:
                text = report_to_text(report)
            _write(text, args.out)
            return EXIT_OK

        if args.command == "sweep":
            _write(to_csv(sweep(grid, args.nu_source, args.jobs), args.metric), args.out)
            return EXIT_OK

        from .verification import run_suite

        result = run_suite()
        if args.format == "machine":
            _write(result.to_json(), args.out)
        else:
            _write(result.to_text(), None)
        return EXIT_OK if result.passed else EXIT_VERIFY
    except OSError as exc:
        print(f"tmsteleport: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
