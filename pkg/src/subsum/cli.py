"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 invalid instance or arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import io
from .generate import generate, parse_term_requests
from .instance import InstanceError, NormalizationError, normalize_instance, validate
from .oracle import BRUTE_FORCE_LIMIT, brute_min
from .solver import Solver

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2

log = logging.getLogger("subsum")


class CliFailure(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        return io.read_instance(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliFailure(EXIT_IO, f"cannot read {path}: {exc}") from exc
    except InstanceError as exc:
        raise CliFailure(EXIT_INVALID, f"invalid instance: {exc}") from exc


def _load_valid(path: str):
    instance = _load(path)
    problems = validate(instance)
    if problems:
        raise CliFailure(EXIT_INVALID, "invalid instance:\n" + "\n".join(
            f"  {p}" for p in problems))
    return instance


def _write(path: str | None, text: str) -> None:
    try:
        io.write_text(path, text)
    except OSError as exc:
        raise CliFailure(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _solve_text(result: dict) -> str:
    lines = [
        f"minimum: {result['minimum']}",
        f"minimizer: {result['minimizer']}",
        f"flow value: {result['flow_value']} (offset {result['offset']})",
        "phases:",
    ]
    for p in result["phases"]:
        lines.append(f"  2*Delta={p['twoDelta']:<8} augmentations={p['augmentations']:<7} "
                     f"searches={p['bfs_count']}")
    for kind, counts in result["counters"].items():
        detail = " ".join(f"{k}={v}" for k, v in counts.items())
        lines.append(f"{kind}: {detail}")
    if "wall_time" in result:
        lines.append(f"wall time: {result['wall_time']:.3f}s")
    return "\n".join(lines) + "\n"


def cmd_solve(args: argparse.Namespace) -> int:
    instance = _load_valid(args.input)
    start = time.perf_counter()
    result = Solver(instance, audit=args.audit).solve()
    elapsed = time.perf_counter() - start
    # Wall time would break byte-identical output, so it is opt-in.
    data = io.result_to_dict(result, elapsed if args.stats else None)
    text = io.dumps(data) if args.format == "json" else _solve_text(data)
    _write(args.output, text)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    instance = _load(args.input)
    problems = validate(instance)
    if not problems:
        print("valid")
        return EXIT_OK
    for p in problems:
        print(p)
    return EXIT_INVALID


def cmd_normalize(args: argparse.Namespace) -> int:
    instance = _load(args.input)
    try:
        normalized = normalize_instance(instance)
    except NormalizationError as exc:
        raise CliFailure(EXIT_INVALID, f"cannot normalize: {exc}") from exc
    problems = validate(normalized)
    if problems:
        raise CliFailure(EXIT_INVALID, "normalized instance is still invalid:\n" + "\n".join(
            f"  {p}" for p in problems))
    _write(args.output, io.dumps(io.instance_to_dict(normalized)))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        requests = parse_term_requests(args.terms)
        instance = generate(args.nodes, requests, args.max_value, args.seed)
    except (ValueError, InstanceError) as exc:
        raise CliFailure(EXIT_INVALID, str(exc)) from exc
    _write(args.output, io.dumps(io.instance_to_dict(instance)))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    instance = _load_valid(args.input)
    if instance.n > BRUTE_FORCE_LIMIT:
        raise CliFailure(EXIT_INVALID,
                         f"brute force needs n <= {BRUTE_FORCE_LIMIT}, got {instance.n}")
    report = brute_min(instance)
    data = {"minimum": report.minimum, "minimizer": report.smallest_minimizer,
            "minimizers": len(report.minimizers), "evaluations": report.evaluations}
    if args.format == "json":
        _write(None, io.dumps(data))
    else:
        _write(None, f"minimum: {data['minimum']}\nminimizer: {data['minimizer']}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subsum", description="Exact minimization of sums of submodular terms.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimize an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="result path (default stdout)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--audit", action="store_true",
                   help="check every flow invariant after each augmentation (slow)")
    p.add_argument("--stats", action="store_true", help="include wall time")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="report invariant violations")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("normalize", help="rewrite terms into normalized form")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--terms", required=True,
                   help="comma-separated kind:count[:size], e.g. pairwise:5,cardinality:2:4")
    p.add_argument("--max-value", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="instance path (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="brute-force minimum (n <= 20)")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliFailure as exc:
        print(exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
