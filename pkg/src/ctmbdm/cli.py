"""Command-line entry point.

Reports go to stdout as CSV, progress and summaries to stderr. Exit status
is 0 on success, 1 for bad input data, 2 for bad flags.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .bdm import (DecompositionSpec, GridFormatError, GridPattern, Remainder, bdm_1d, bdm_2d,
                  block_entropy, shannon_entropy)
from .distribution import (ComplexityTable, FrequencyTable, TableError, export_table, import_table,
                           lookup_K, to_complexity)
from .enumeration import (DEFAULT_BUDGET, BudgetExceededError, EnumerationPlan, Exhaustive, Sampled,
                          available_workers, default_cutoff, enumerate_outputs)
from .machine import MachineSpec
from .randomness import posterior_random, to_binary

log = logging.getLogger("ctmbdm")


class DataError(Exception):
    """Input data problem; exits with status 1."""


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {value}")
    return value


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(out: Path, argv: Sequence[str], config: dict, inputs: Sequence[Path], started: float) -> Path:
    manifest = {
        "command": ["ctmbdm", *argv],
        "config": config,
        "inputs": {str(p): _sha256(p) for p in inputs},
        "output": {str(out): _sha256(out)},
        "version": __version__,
        "duration_seconds": round(time.perf_counter() - started, 3),
    }
    path = out.with_name(out.name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _load_ctable(path: str) -> ComplexityTable:
    try:
        table = import_table(path)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None
    except TableError as exc:
        raise DataError(str(exc)) from None
    if isinstance(table, FrequencyTable):
        if not table.entries:
            raise DataError(f"{path}: frequency table is empty")
        return to_complexity(table)
    if not table.entries:
        raise DataError(f"{path}: complexity table is empty")
    return table


def _flag(b: bool) -> str:
    return "true" if b else "false"


# -- commands ------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace, argv: Sequence[str]) -> int:
    started = time.perf_counter()
    spec = MachineSpec(args.states, args.symbols)
    cutoff = args.cutoff if args.cutoff is not None else default_cutoff(args.states)
    mode = Sampled(args.sample, args.seed) if args.sample is not None else Exhaustive()
    plan = EnumerationPlan(spec, mode, cutoff, symmetry_reduction=args.symmetry,
                           all_blanks=not args.single_blank)
    workers = args.workers or available_workers()
    table = enumerate_outputs(plan, workers=workers, budget=args.budget)
    out = Path(args.out)
    try:
        export_table(table, out)
    except OSError as exc:
        raise DataError(f"cannot write {out}: {exc.strerror or exc}") from None
    config = {"states": spec.states, "symbols": spec.symbols, "cutoff": cutoff,
              "mode": "sampled" if args.sample is not None else "exhaustive",
              "sample": args.sample, "seed": args.seed if args.sample is not None else None,
              "symmetry_reduction": args.symmetry, "blanks": "zero" if args.single_blank else "all",
              "workers": workers, "budget": args.budget}
    manifest = write_manifest(out, argv, config, [], started)
    print(f"{plan.work_items} machines simulated, {table.halters} halting runs, "
          f"{len(table)} distinct outputs, max halting time {table.max_steps}; "
          f"wrote {out} and {manifest}", file=sys.stderr)
    return 0


def cmd_ctm(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ctable = _load_ctable(args.dist)
    print("string,K,extrapolated")
    for s in args.strings:
        if not s.isalnum():
            raise DataError(f"invalid symbol string {s!r}")
        hit = lookup_K(ctable, s)
        print(f"{s},{hit.K:.6f},{_flag(hit.extrapolated)}")
    return 0


def cmd_bdm(args: argparse.Namespace, argv: Sequence[str]) -> int:
    if args.grid:
        if args.dist2d is None:
            raise _UsageError("--grid needs --dist2d")
        block = args.block if args.block is not None else 4
        path = Path(args.input)
        try:
            grid = GridPattern.parse(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None
        except GridFormatError as exc:
            raise DataError(f"{path}:{exc.line}: {exc.message}") from None
        result = bdm_2d(grid, _load_ctable(args.dist2d), block, Remainder(args.remainder))
    else:
        if args.dist is None:
            raise _UsageError("--dist is required without --grid")
        block = args.block if args.block is not None else 12
        if args.overlap >= block:
            raise _UsageError(f"--overlap ({args.overlap}) must be smaller than --block ({block})")
        if not args.input.isalnum():
            raise DataError(f"invalid symbol string {args.input!r}")
        spec = DecompositionSpec(block, args.overlap, Remainder(args.remainder))
        result = bdm_1d(args.input, _load_ctable(args.dist), spec)
    print("value,blocks,distinct,extrapolated")
    print(f"{result.value:.6f},{result.blocks},{result.distinct},{result.extrapolated_blocks}")
    if result.extrapolated_blocks:
        print(f"warning: {result.extrapolated_blocks} block type(s) used extrapolated K", file=sys.stderr)
    return 0


def cmd_randomness(args: argparse.Namespace, argv: Sequence[str]) -> int:
    try:
        strings = [to_binary(s) for s in args.strings]
    except ValueError as exc:
        raise DataError(str(exc)) from None
    ctable = _load_ctable(args.dist)
    print("string,p_R_given_s,extrapolated")
    for s in strings:
        try:
            j = posterior_random(s, ctable, args.prior)
        except TableError as exc:
            raise DataError(str(exc)) from None
        print(f"{s},{j.posterior_random:.6f},{_flag(j.extrapolated)}")
    return 0


def cmd_entropy(args: argparse.Namespace, argv: Sequence[str]) -> int:
    print("string,entropy")
    for s in args.strings:
        if args.block is None:
            h = shannon_entropy(s)
        else:
            if len(s) < args.block:
                raise DataError(f"string {s!r} is shorter than block {args.block}")
            h = block_entropy(s, args.block)
        print(f"{s},{h:.6f}")
    return 0


def cmd_reference(args: argparse.Namespace, argv: Sequence[str]) -> int:
    from .reference import load_pybdm

    started = time.perf_counter()
    try:
        table = load_pybdm(args.dataset)
    except FileNotFoundError as exc:
        raise DataError(str(exc)) from None
    out = Path(args.out)
    export_table(table, out)
    write_manifest(out, argv, {"dataset": args.dataset}, [], started)
    print(f"wrote {len(table)} entries to {out}", file=sys.stderr)
    return 0


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctmbdm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="run a machine space and write a frequency table")
    p.add_argument("--states", type=_positive, required=True)
    p.add_argument("--symbols", type=int, default=2, choices=[2])
    p.add_argument("--cutoff", type=_positive, help="step budget (default 1000 for n<=3, 107 for n=4, 500 for n=5)")
    p.add_argument("--sample", type=_positive, metavar="COUNT", help="sample COUNT machines without replacement")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symmetry", action="store_true", help="enumerate one machine per mirror pair")
    p.add_argument("--single-blank", action="store_true",
                   help="count zero-blank runs only (no complement completion)")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=_positive)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                   help="largest exhaustive space to accept")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("ctm", help="look up K for strings")
    p.add_argument("--dist", required=True, help="frequency or complexity CSV")
    p.add_argument("strings", nargs="+", metavar="STRING")
    p.set_defaults(func=cmd_ctm)

    p = sub.add_parser("bdm", help="block decomposition complexity of a string or grid file")
    p.add_argument("--dist")
    p.add_argument("--block", type=_positive)
    p.add_argument("--overlap", type=_non_negative, default=0)
    p.add_argument("--remainder", choices=["keep", "drop"], default="keep")
    p.add_argument("--grid", action="store_true", help="INPUT is a grid file")
    p.add_argument("--dist2d", help="2D complexity CSV with '-'-separated keys")
    p.add_argument("input", metavar="INPUT")
    p.set_defaults(func=cmd_bdm)

    p = sub.add_parser("randomness", help="posterior probability of a random source")
    p.add_argument("--dist", required=True)
    p.add_argument("--prior", type=_probability, default=0.5)
    p.add_argument("strings", nargs="+", metavar="STRING")
    p.set_defaults(func=cmd_randomness)

    p = sub.add_parser("entropy", help="Shannon or sliding-window block entropy")
    p.add_argument("--block", type=_positive)
    p.add_argument("strings", nargs="+", metavar="STRING")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("reference", help="export a published CTM table shipped with pybdm")
    p.add_argument("--dataset", default="CTM-B2-D12")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reference)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, argv)
    except _UsageError as exc:
        parser.error(str(exc))
    except (ValueError, OverflowError) as exc:
        if isinstance(exc, TableError):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"ctmbdm: error: {exc}", file=sys.stderr)
        return 2
    except (DataError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
