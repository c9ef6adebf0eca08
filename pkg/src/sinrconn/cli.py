"""Command line entry point: ``sinrconn <command> [options]``.

Exit codes: 0 on success (including searches that found nothing), 2 on
usage errors, 1 on runtime failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .harness import COMMANDS, FORMATS, ExperimentSpec, UsageError, iter_emit, metadata, run

log = logging.getLogger("sinrconn")

# config-file keys that map onto ExperimentSpec fields under another name
_ALIASES = {"n": "sizes", "kmax": "k_max", "hmin": "h_min"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sinrconn", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file whose keys mirror the flags; flags win")
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--n", dest="sizes", type=int, action="append",
                        help="node count; repeat for several sizes")
    parser.add_argument("--k", type=int)
    parser.add_argument("--kmax", dest="k_max", type=int)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--dim", type=int, choices=(1, 2))
    parser.add_argument("--epsilon", type=float)
    parser.add_argument("--hmin", dest="h_min", type=int)
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.add_argument("--workers", type=int, help="processes for random trials")
    parser.add_argument("-v", "--verbose", action="store_true", help="log metadata and witnesses")
    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    values: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        for key, val in cfg.items():
            key = _ALIASES.get(key, key)
            if key not in ExperimentSpec.__dataclass_fields__ or key == "command":
                raise UsageError(f"unknown config key {key!r}")
            values[key] = val
    for key in ExperimentSpec.__dataclass_fields__:
        val = getattr(args, key, None)
        if val is not None and key != "command":
            values[key] = val
    if isinstance(values.get("sizes"), int):
        values["sizes"] = [values["sizes"]]
    values.setdefault("sizes", [])
    return ExperimentSpec(command=args.command, **values)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        spec = spec_from_args(args)
        spec.validate()
    except (UsageError, TypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"sinrconn: error: {exc}", file=sys.stderr)
        return 2

    log.info("metadata: %s", json.dumps(metadata(spec), sort_keys=True))
    try:
        out = open(spec.out, "wb") if spec.out else sys.stdout.buffer
        try:
            for chunk in iter_emit(run(spec), spec.format):
                out.write(chunk)
                out.flush()
        finally:
            if spec.out:
                out.close()
    except Exception as exc:  # noqa: BLE001 - report and map to exit code 1
        print(f"sinrconn: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
