"""
dirty-mac-lab - command-line entry point.

Parses flags, merges them over the YAML defaults and an optional config file,
dispatches to the selected mode and maps the outcome to an exit code:

    0  every check passed
    1  a theorem, equivalence or statistical check failed
    2  usage, validation or I/O error

Reports go to stdout (or `--out`); structured logs go to stderr.
"""
import argparse
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog
import yaml
from dotenv import load_dotenv
from omegaconf.errors import OmegaConfBaseException
from pydantic import ValidationError

from dirty_mac_lab.cli.commands import COMMANDS
from dirty_mac_lab.cli.config import load_config
from dirty_mac_lab.errors import LabError
from dirty_mac_lab.evaluation.tracker import RunTracker
from dirty_mac_lab.utils.log_config import configure_logging

log = structlog.get_logger()

USAGE_ERRORS = (ValidationError, LabError, OSError, OmegaConfBaseException, yaml.YAMLError)

# flag -> dotted config key
_POINT_FLAGS = {"p1": "point.p1", "p2": "point.p2", "q1": "point.q1", "q2": "point.q2",
                "no": "point.no", "cb12": "point.cb12", "cb21": "point.cb21", "db": "point.db"}
_TOP_FLAGS = {"mode": "mode", "seed": "seed", "jobs": "jobs", "out": "out", "format": "format",
              "ledger": "ledger", "n": "simulate.n", "claim1": "simulate.claim1",
              "noise_family": "simulate.noise_family"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirty-mac-lab",
        description="Capacity-region bounds, constant-gap checks and lattice-scheme simulation "
                    "for the doubly-dirty MAC with transmitter cooperation.",
    )
    point = parser.add_argument_group("channel (linear scale unless --db; 'inf' accepted for q1/q2)")
    for name in ("p1", "p2", "q1", "q2", "no"):
        point.add_argument(f"--{name}", type=float)
    point.add_argument("--cb12", type=float, help="Cooperation capacity Tx1 -> Tx2 (bits/use)")
    point.add_argument("--cb21", type=float, help="Cooperation capacity Tx2 -> Tx1 (bits/use)")
    point.add_argument("--db", action="store_true", default=None,
                       help="Interpret p1, p2, q1, q2, no in dB")

    parser.add_argument("--mode", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="YAML or JSON file merged over the defaults")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--jobs", type=int, help="Worker processes for sweeps")
    parser.add_argument("--out", help="Output file (output directory for plotdata)")
    parser.add_argument("--format", choices=["json", "csv"])
    parser.add_argument("--ledger", help="Directory for the JSONL run ledger")
    parser.add_argument("--count", type=int, help="Random channels for sweep/verify")

    sim = parser.add_argument_group("simulation")
    sim.add_argument("--n", type=int, help="Samples per layer")
    sim.add_argument("--layers", help="Comma-separated subset of L,C,R")
    sim.add_argument("--claim1", action="store_true", default=None,
                     help="Also run the worst-case-noise mutual-information check")
    sim.add_argument("--noise-family", dest="noise_family", choices=["gaussian", "uniform", "laplace"])
    return parser


def _set(tree: Dict[str, Any], dotted: str, value: Any) -> None:
    *parents, leaf = dotted.split(".")
    for key in parents:
        tree = tree.setdefault(key, {})
    tree[leaf] = value


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Nested override tree holding only the flags that were given."""
    tree: Dict[str, Any] = {}
    for flag, key in {**_POINT_FLAGS, **_TOP_FLAGS}.items():
        value = getattr(args, flag)
        if value is not None:
            _set(tree, key, value)
    if args.layers is not None:
        _set(tree, "simulate.layers", [x.strip() for x in args.layers.split(",") if x.strip()])
    if args.count is not None:
        _set(tree, "sweep.count", args.count)
        _set(tree, "verify.count", args.count)
    return tree


def _write(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        log.info("Report written.", path=str(path))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    structlog.contextvars.clear_contextvars()
    configure_logging(os.getenv("DIRTY_MAC_LAB_LOG_LEVEL", "INFO"))

    try:
        cfg = load_config(args.config, overrides_from_args(args))
    except USAGE_ERRORS as e:
        print(f"dirty-mac-lab: invalid configuration: {e}", file=sys.stderr)
        return 2

    configure_logging(cfg.logging.level)
    structlog.contextvars.bind_contextvars(mode=cfg.mode, seed=cfg.seed)
    log.info("Run started.")

    try:
        result = COMMANDS[cfg.mode](cfg)
        _write(result.text, None if cfg.mode == "plotdata" else cfg.out)
    except USAGE_ERRORS as e:
        log.error("Run aborted.", error=str(e))
        print(f"dirty-mac-lab: {e}", file=sys.stderr)
        return 2

    if cfg.ledger:
        RunTracker(cfg.ledger).log_run(cfg.mode, cfg.seed, result.passed, result.summary)
    log.info("Run finished.", exit_code=result.exit_code)
    return result.exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
