"""Command-line interface.

Each subcommand maps 1:1 to a library operation. Flags override values read
from an optional YAML config document, and every computed report is rendered
as deterministic JSON (6 significant digits unless --raw). Exit codes: 0 on
success, 2 when the request fails schema validation, 3 when the domain
rejects it (for example an infeasible correlation).
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import config as cfg
from ._version import __version__
from .errors import CompositeError
from .report import render
from .simulate import run_grid, write_csv

_DEFAULT_BIND = "127.0.0.1:8000"

_FLOAT_KEYS = frozenset(
    {"p1", "p2", "d1", "d2", "r1", "r2", "o1", "o2", "rho", "rho0", "rho1", "alpha", "power"}
)
_INT_KEYS = frozenset({"n", "n_points"})
_CHOICE_KEYS = {
    "measure": ("rd", "rr", "or"),
    "variance": ("pooled", "unpooled"),
    "category": ("weak", "moderate", "strong", "no_prior"),
}
_LIST_KEYS = frozenset({"p1_values", "p2_values", "r1_values", "r2_values", "rho_true_values"})


def _pair(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return [float(p) for p in parts]


def _floats(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def _words(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def _add_payload_flags(sub: argparse.ArgumentParser, op: str) -> None:
    for key in sorted(cfg.OPERATIONS[op]):
        flag = "--" + key.replace("_", "-")
        if key in _FLOAT_KEYS:
            sub.add_argument(flag, type=float)
        elif key in _INT_KEYS:
            sub.add_argument(flag, type=int)
        elif key in _CHOICE_KEYS:
            sub.add_argument(flag, choices=_CHOICE_KEYS[key])
        elif key in _LIST_KEYS:
            sub.add_argument(flag, type=_floats, metavar="V1,V2,...")
        elif key in ("rules", "variances"):
            sub.add_argument(flag, type=_words, metavar="A,B,...")
        elif key.endswith("_interval"):
            sub.add_argument(flag, type=_pair, metavar="LO,HI")
        elif key in ("reps", "seed", "workers"):
            sub.add_argument(flag, type=int)
        else:  # pragma: no cover - every schema key is classified above
            raise AssertionError(f"unclassified payload key {key}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="composize",
        description="Two-arm trial sizing for a composite of two binary endpoints.",
    )
    parser.add_argument("--version", action="version", version=f"composize {__version__}")
    subs = parser.add_subparsers(dest="op", required=True)

    for op in ("derive", "bounds", "size", "power", "recommend", "curve"):
        sub = subs.add_parser(op, help=f"run the {op} operation")
        _add_payload_flags(sub, op)
        sub.add_argument("--config", help="YAML config document; flags override its fields")
        sub.add_argument("--out", help="write the JSON report here instead of stdout")
        sub.add_argument("--raw", action="store_true", help="full-precision floats")
        if op == "curve":
            sub.add_argument("--csv", help="also write the curve as CSV (rho,n_low,n_point,n_high)")
        sub.set_defaults(func=_run_report_op)

    sim = subs.add_parser("simulate", help="run a simulation grid and write the results CSV")
    _add_payload_flags(sim, "simulate")
    sim.add_argument("--config", help="YAML config document; flags override its fields")
    sim.add_argument("--out", required=True, help="results CSV path")
    sim.set_defaults(func=_run_simulate)

    srv = subs.add_parser("serve", help="start the HTTP JSON service")
    srv.add_argument(
        "--bind",
        default=os.environ.get("COMPOSIZE_BIND", _DEFAULT_BIND),
        help=f"HOST:PORT (default ${{COMPOSIZE_BIND}} or {_DEFAULT_BIND})",
    )
    srv.set_defaults(func=_run_serve)

    return parser


def _payload(args: argparse.Namespace) -> dict:
    flags = {
        key: getattr(args, key)
        for key in cfg.OPERATIONS[args.op]
        if getattr(args, key, None) is not None
    }
    base = cfg.load_config(args.config) if args.config else {}
    return cfg.merge(base, flags)


def _write_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_report_op(args: argparse.Namespace) -> int:
    report = cfg.handle(args.op, _payload(args))
    _write_text(render(report, raw=args.raw), args.out)
    if args.op == "curve" and args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["rho", "n_low", "n_point", "n_high"])
            for row in report["curve"]:
                writer.writerow(
                    [repr(row["rho"]), row["n_low"], row["n_point"], row["n_high"]]
                )
    return 0


def _run_simulate(args: argparse.Namespace) -> int:
    grid = cfg.grid_config_from(_payload(args))
    write_csv(run_grid(grid), args.out)
    return 0


def _run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.bind.rpartition(":")
    if not host or not port.isdigit():
        raise cfg.SchemaError("schema.invalid", f"--bind must be HOST:PORT, got {args.bind!r}")
    uvicorn.run(create_app(), host=host, port=int(port))
    return 0


def _fail(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"code": code, "message": message}) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except cfg.SchemaError as exc:
        _fail(exc.code, str(exc))
        return 2
    except CompositeError as exc:
        _fail(exc.code, str(exc))
        return 3


if __name__ == "__main__":
    sys.exit(main())
