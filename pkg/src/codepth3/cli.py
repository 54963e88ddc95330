"""Command line interface: ``codepth3 {class,data,list,print} INPUT``.

INPUT is a one-line spec such as ``"QQ[x,y] / (x^2, x*y)"`` or the path of a
file in either input form.  Exit codes: 0 success, 2 parse or usage error,
3 unsupported input, 4 generic reduction failed, 5 resource limit hit,
70 internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .classify import ConsistencyError, RationalSeries
from .groebner import ResourceLimitError
from .invariants import ReductionConfig, ReductionFailure, UnsupportedInputError
from .parse import ParseError, parse_input
from .pipeline import KEYS, DataTable, UnknownKeyError, data_for_spec
from .render import Block, hjoin, series_block, series_one_line

EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_REDUCTION, EXIT_RESOURCE = 0, 2, 3, 4, 5
EXIT_INTERNAL = 70


def _text_value(v) -> Block:
    if isinstance(v, RationalSeries):
        return series_block(v)
    return Block.text("null" if v is None else str(v))


def format_data_text(table: DataTable) -> str:
    blocks = [hjoin([Block.text(f"{k} => "), _text_value(table.value(k))]) for k in KEYS]
    return "\n".join(str(b) for b in blocks)


def format_list_text(table: DataTable, keys: list[str]) -> str:
    parts: list[Block] = [Block.text("{")]
    for i, k in enumerate(keys):
        if i:
            parts.append(Block.text(", "))
        parts.append(_text_value(table.value(k)))
    parts.append(Block.text("}"))
    return str(hjoin(parts))


def format_print_text(table: DataTable, keys: list[str]) -> str:
    out = []
    for k in keys:
        v = table.value(k)
        s = series_one_line(v) if isinstance(v, RationalSeries) else ("null" if v is None else str(v))
        out.append(f"{k}={s} ")
    return "".join(out)


def _json_value(v):
    return v.to_json() if isinstance(v, RationalSeries) else v


def render(command: str, table: DataTable, keys: list[str], fmt: str) -> str:
    if command == "class":
        s = str(table.ring_class)
        return json.dumps({"Class": s}) if fmt == "json" else s
    if command == "data":
        return json.dumps(table.to_json()) if fmt == "json" else format_data_text(table)
    if command == "list":
        if fmt == "json":
            return json.dumps([_json_value(table.value(k)) for k in keys])
        return format_list_text(table, keys)
    if fmt == "json":
        return json.dumps({k: _json_value(table.value(k)) for k in keys})
    return format_print_text(table, keys)


@dataclass(frozen=True)
class Job:
    command: str
    text: str
    keys: tuple[str, ...]
    fmt: str
    attempts: int
    seed: int


def run_job(job: Job) -> tuple[int, str]:
    """(exit code, output or error message) for one input."""
    try:
        spec = parse_input(job.text)
        table = data_for_spec(spec, ReductionConfig(attempts=job.attempts, seed=job.seed))
        return EXIT_OK, render(job.command, table, list(job.keys), job.fmt)
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}"
    except UnsupportedInputError as exc:
        return EXIT_UNSUPPORTED, f"unsupported input: {exc}"
    except ReductionFailure as exc:
        return EXIT_REDUCTION, f"error: {exc}"
    except ResourceLimitError as exc:
        return EXIT_RESOURCE, f"resource limit: {exc}"
    except ConsistencyError as exc:
        return EXIT_INTERNAL, f"internal consistency check failed: {exc}"


def _parse_keys(raw: str | None, command: str) -> tuple[str, ...]:
    if command not in ("list", "print") or raw is None:
        return ()
    keys = tuple(k.strip() for k in raw.split(",") if k.strip())
    for k in keys:
        if k not in KEYS:
            raise UnknownKeyError(k)
    return keys


def build_parser() -> argparse.ArgumentParser:
    def attempts(s: str) -> int:
        v = int(s)
        if v < 1:
            raise argparse.ArgumentTypeError("attempts must be at least 1")
        return v

    ap = argparse.ArgumentParser(
        prog="codepth3",
        description="Classify quotients of polynomial rings of codepth at most 3 by Tor algebra class.",
    )
    ap.add_argument("command", choices=("class", "data", "list", "print"))
    ap.add_argument("input", nargs="?", help="spec string, or path of a spec file ('-' reads stdin)")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--attempts", type=attempts, default=25,
                    help="generic reduction makes up to ATTEMPTS^2 tries (default 25)")
    ap.add_argument("--seed", type=int, default=0, help="seed for the random linear forms (default 0)")
    ap.add_argument("--keys", help="comma separated keys for list and print")
    ap.add_argument("--batch", metavar="FILE", help="file with one spec per line")
    ap.add_argument("--jobs", type=int, default=None, help="worker processes for --batch")
    return ap


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command in ("list", "print") and not args.keys:
        ap.error(f"{args.command} needs --keys")
    try:
        keys = _parse_keys(args.keys, args.command)
    except UnknownKeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if args.batch:
        if args.input:
            ap.error("give either INPUT or --batch, not both")
        with open(args.batch, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        jobs = [Job(args.command, ln, keys, args.format, args.attempts, args.seed) for ln in lines]
        if args.jobs == 1 or len(jobs) <= 1:
            results = [run_job(j) for j in jobs]
        else:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(run_job, jobs))
        worst = EXIT_OK
        for code, out in results:
            if code:
                print(out, file=sys.stderr)
                print("null" if args.format == "json" else "")
                worst = max(worst, code)
            else:
                print(out)
        return worst

    if not args.input:
        ap.error("missing INPUT (or --batch FILE)")
    code, out = run_job(Job(args.command, _read_input(args.input), keys, args.format,
                            args.attempts, args.seed))
    print(out, file=sys.stderr if code else sys.stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
