"""Command-line front end.

Exit codes: 0 success, 1 property violation or data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import asdict, replace
from pathlib import Path

from . import codec
from .core import (
    DictionaryConfig,
    Family,
    Literal,
    LzplError,
    Parsing,
    ScaleExceeded,
    ScaleLimits,
    format_token,
    stats,
    token_to_json,
)
from .corpus import GENERATORS, random_text, render
from .dictionary import check_dynamic_suffix_closed, load_phrase_file
from .oracle import brute_force_optimal, search_greedy_gap
from .parsegraph import Edge, EdgeKind, build_graph, check_suffix_edge_closure, export_dot, shortest_path
from .parsers import flexible_parse, greedy_parse, optimal_parse, reverse_greedy_parse

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
DEFAULT_BENCH_WINDOWS = "16,256,4096,unbounded"


class UsageError(Exception):
    pass


def parse_window(value: str) -> int | None:
    if value.lower() in ("unbounded", "none", "inf"):
        return None
    h = int(value)
    if h < 1:
        raise argparse.ArgumentTypeError("window must be positive or 'unbounded'")
    return h


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _config(args, window=...) -> DictionaryConfig:
    family = Family(args.family)
    if family is Family.STATIC:
        if not getattr(args, "dict", None):
            raise UsageError("--family static needs --dict FILE")
        return DictionaryConfig.static(load_phrase_file(args.dict))
    if getattr(args, "dict", None):
        raise UsageError("--dict only applies to --family static")
    if family is Family.LZ78:
        return DictionaryConfig.lz78()
    h = args.window if window is ... else window
    return DictionaryConfig.lz77(h, allow_overlap=getattr(args, "overlap", False))


def _limits(args) -> ScaleLimits:
    limits = ScaleLimits.from_env()
    changes = {}
    for name in ("max_text", "max_window", "max_graph", "max_brute"):
        value = getattr(args, name, None)
        if value is not None:
            changes[name] = value
    return replace(limits, **changes)


def _run_strategy(name: str, config: DictionaryConfig, text: bytes, limits: ScaleLimits) -> Parsing:
    if name == "greedy":
        return greedy_parse(config, text)
    if name == "optimal":
        return optimal_parse(config, text, limits)
    if name == "flexible":
        return flexible_parse(config, text)
    if name == "reverse":
        if config.family is not Family.STATIC:
            raise UsageError("strategy 'reverse' requires --family static")
        return reverse_greedy_parse(config, text)
    raise UsageError(f"unknown strategy {name!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_parse(args) -> int:
    config = _config(args)
    if args.strategy == "reverse" and config.family is not Family.STATIC:
        raise UsageError("strategy 'reverse' requires --family static")
    text = _read(args.input)
    limits = _limits(args)
    if args.strategy == "all":
        names = ["greedy", "optimal", "flexible"]
        if config.family is Family.STATIC:
            names.append("reverse")
    else:
        names = [args.strategy]
    results = []
    for name in names:
        parsing = _run_strategy(name, config, text, limits)
        row = {"strategy": name, **{k: v for k, v in asdict(stats(parsing)).items() if k != "encoded_bits"}}
        if args.tokens:
            row["tokens"] = [token_to_json(t) for t in parsing.tokens]
            row["starts"] = list(parsing.starts)
        results.append((row, parsing))

    if args.format == "json":
        report = {"command": "parse", "input": args.input, "length": len(text),
                  "family": config.family.value, "window": config.window,
                  "results": [row for row, _ in results]}
        print(json.dumps(report, indent=2))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["strategy", "token_count", "pointer_count", "literal_count"])
        for row, _ in results:
            writer.writerow([row["strategy"], row["token_count"], row["pointer_count"], row["literal_count"]])
        sys.stdout.write(out.getvalue())
    else:
        print(f"{args.input}: {len(text)} symbols, {config.describe()}")
        for row, parsing in results:
            print(f"  {row['strategy']:<9} token_count {row['token_count']} "
                  f"(pointers {row['pointer_count']}, literals {row['literal_count']})")
            if args.tokens:
                print("    " + " ".join(format_token(t) for t in parsing.tokens))
    return EXIT_OK


def _verify_cases(args):
    if args.input is not None:
        yield _read(args.input)
        return
    rng = random.Random(args.seed)
    for case in range(args.random):
        gen = args.generator if args.generator != "mixed" else GENERATORS[case % 2]
        yield random_text(rng, args.len, args.alphabet, gen)


def verify_text(config: DictionaryConfig, text: bytes, limits: ScaleLimits) -> dict[str, dict]:
    """Run the property battery on one text; each entry is ``{"status": ..., ...}``."""
    out: dict[str, dict] = {}

    try:
        report = check_dynamic_suffix_closed(config, text, limits)
        out["dynamic_suffix_closed"] = {"status": "pass" if report else "fail"}
        if not report:
            out["dynamic_suffix_closed"]["witness"] = report.witness.to_json()
    except ScaleExceeded as exc:
        out["dynamic_suffix_closed"] = {"status": "skipped", "reason": str(exc)}

    try:
        graph = build_graph(config, text, limits)
    except ScaleExceeded as exc:
        for name in ("suffix_edge_closure", "greedy_equals_optimal", "brute_force_agrees"):
            out[name] = {"status": "skipped", "reason": str(exc)}
        return out

    report = check_suffix_edge_closure(graph)
    out["suffix_edge_closure"] = {"status": "pass" if report else "fail"}
    if not report:
        out["suffix_edge_closure"]["witness"] = report.witness.to_json()

    greedy = greedy_parse(config, text).token_count
    optimal = len(shortest_path(graph))
    entry = {"status": "pass" if greedy == optimal else "fail", "greedy": greedy, "optimal": optimal}
    out["greedy_equals_optimal"] = entry

    if limits.max_brute is None or len(text) <= limits.max_brute:
        brute, _ = brute_force_optimal(config, text, limits)
        ok = brute == optimal == greedy
        out["brute_force_agrees"] = {"status": "pass" if ok else "fail", "brute_force": brute,
                                     "optimal": optimal, "greedy": greedy}
    else:
        out["brute_force_agrees"] = {"status": "skipped",
                                     "reason": f"text length {len(text)} > {limits.max_brute}"}
    return out


def cmd_verify(args) -> int:
    if args.input is None and args.random is None:
        raise UsageError("verify needs an input file or --random N")
    if args.input is not None and args.random is not None:
        raise UsageError("give either an input file or --random, not both")
    config = _config(args)
    limits = _limits(args)
    names = ("dynamic_suffix_closed", "suffix_edge_closure", "greedy_equals_optimal", "brute_force_agrees")
    tally = {name: {"passed": 0, "failed": 0, "skipped": 0} for name in names}
    failures = []
    cases = 0
    for index, text in enumerate(_verify_cases(args)):
        cases += 1
        for name, result in verify_text(config, text, limits).items():
            key = {"pass": "passed", "fail": "failed", "skipped": "skipped"}[result["status"]]
            tally[name][key] += 1
            if result["status"] == "fail" and len(failures) < args.max_failures:
                failures.append({"case": index, "text": render(text), "text_hex": text.hex(),
                                 "check": name, **{k: v for k, v in result.items() if k != "status"}})
    ok = all(t["failed"] == 0 for t in tally.values())
    report = {"command": "verify", "family": config.family.value, "window": config.window,
              "cases": cases, "ok": ok, "checks": tally, "failures": failures}
    print(json.dumps(report, indent=2))
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_graph(args) -> int:
    config = _config(args)
    text = _read(args.input)
    limits = _limits(args)
    graph = build_graph(config, text, limits)
    highlight = None
    if args.highlight == "optimal":
        highlight = shortest_path(graph)
    elif args.highlight in ("greedy", "flexible"):
        parsing = _run_strategy(args.highlight, config, text, limits)
        highlight = [Edge(s, s + t.length, EdgeKind.LITERAL if isinstance(t, Literal) else EdgeKind.DICTIONARY)
                     for s, t in zip(parsing.starts, parsing.tokens)]
    sys.stdout.write(export_dot(graph, highlight))
    return EXIT_OK


def cmd_compress(args) -> int:
    params = codec.CodecParams(args.offset_bits, args.length_bits)
    text = _read(args.input)
    stream, parse_stats = codec.encode_with_stats(text, params, args.strategy)
    _write(args.output, stream)
    report = {"command": "compress", "input": args.input, "output": args.output,
              "strategy": codec.Strategy(args.strategy).value,
              "offset_bits": params.offset_bits, "length_bits": params.length_bits,
              "input_bytes": len(text), "stream_bytes": len(stream),
              **asdict(parse_stats), "payload_bits": parse_stats.encoded_bits}
    print(json.dumps(report, indent=2), file=sys.stderr if args.output == "-" else sys.stdout)
    return EXIT_OK


def cmd_decompress(args) -> int:
    _write(args.output, codec.decode(_read(args.input)))
    return EXIT_OK


def cmd_search(args) -> int:
    if args.max_len > 24:
        raise UsageError("--max-len is limited to 24")
    result = search_greedy_gap(args.family, args.alphabet, args.max_len, args.budget, args.seed,
                               window=args.window)
    report = {"command": "search", "family": result.family.value, "alphabet": args.alphabet,
              "max_len": args.max_len, "budget": args.budget, "seed": args.seed,
              "explored": result.explored, "found": result.found is not None}
    if result.family is Family.LZ77:
        report["windows"] = list(result.windows)
    if result.found is not None:
        gap = result.found
        report["instance"] = {
            "text": render(gap.text), "text_hex": gap.text.hex(),
            "config": gap.config.describe(),
            "greedy_tokens": gap.greedy.token_count, "optimal_tokens": gap.optimal_count,
            "greedy": [format_token(t) for t in gap.greedy.tokens],
            "optimal": [format_token(t) for t in gap.optimal.tokens],
        }
        if gap.config.family is Family.STATIC:
            report["instance"]["phrases"] = sorted(render(p) for p in gap.config.phrases)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    elif result.found is None:
        print(f"none found ({result.explored} explored)")
    else:
        inst = report["instance"]
        print(f"gap found after {result.explored} explored: {inst['text']!r} under {inst['config']}")
        print(f"  greedy  ({inst['greedy_tokens']}): {' '.join(inst['greedy'])}")
        print(f"  optimal ({inst['optimal_tokens']}): {' '.join(inst['optimal'])}")
    return EXIT_OK


def bench_payload_bits(parsing: Parsing, config: DictionaryConfig, n: int) -> int:
    """Fixed-width cost of a parsing: flag bit per token, 8 bits per literal,
    and per pointer just enough bits for the largest offset and length the
    configuration allows (see docs/reports.md)."""
    s = stats(parsing)
    if config.family is Family.STATIC:
        pointer_bits = max(1, (len(config.phrases) - 1).bit_length())
    else:
        reach = config.window if config.window is not None else max(n, 1)
        longest = max((t.length for t in parsing.tokens), default=1)
        pointer_bits = max(1, (min(reach, max(n, 1)) - 1).bit_length()) + max(1, (longest - 1).bit_length())
    return s.token_count + 8 * s.literal_count + s.pointer_count * pointer_bits


BENCH_HEADER = ["file", "family", "h", "strategy", "tokens", "payload_bits", "wall_time", "failure"]


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise UsageError(f"{corpus} is not a directory")
    family = Family(args.family)
    windows = [parse_window(w) for w in args.windows.split(",")] if family is Family.LZ77 else [None]
    strategies = [s for s in args.strategies.split(",") if s]
    limits = _limits(args)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(BENCH_HEADER)
    entries = sorted(p for p in corpus.iterdir() if not p.is_dir())
    for path in entries:
        try:
            text = path.read_bytes()
        except OSError as exc:
            out.writerow([path.name, family.value, "", "", "", "", "", f"{type(exc).__name__}: {exc}"])
            continue
        for h in windows:
            config = _config(args, window=h)
            for name in strategies:
                h_col = "unbounded" if h is None else h
                if family is not Family.LZ77:
                    h_col = "-"
                t0 = time.perf_counter()
                try:
                    parsing = _run_strategy(name, config, text, limits)
                except (LzplError, UsageError) as exc:
                    out.writerow([path.name, family.value, h_col, name, "", "", "",
                                  f"{type(exc).__name__}: {exc}"])
                    continue
                wall = time.perf_counter() - t0
                out.writerow([path.name, family.value, h_col, name, parsing.token_count,
                              bench_payload_bits(parsing, config, len(text)), f"{wall:.6f}", ""])
    return EXIT_OK


# ---------------------------------------------------------------------------


def _add_dictionary_flags(p: argparse.ArgumentParser, window: bool = True) -> None:
    p.add_argument("--family", choices=[f.value for f in Family], default="lz77")
    if window:
        p.add_argument("--window", type=parse_window, default=None,
                       help="LZ77 window bound h, or 'unbounded' (default)")
    p.add_argument("--dict", help="newline-delimited phrase file for --family static")


def _add_scale_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-text", type=int, dest="max_text")
    p.add_argument("--max-window", type=int, dest="max_window")
    p.add_argument("--max-graph", type=int, dest="max_graph")
    p.add_argument("--max-brute", type=int, dest="max_brute")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lzpl", description="Dictionary parsing laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a file and report token counts")
    p.add_argument("input")
    _add_dictionary_flags(p)
    p.add_argument("--overlap", action="store_true", help="allow self-overlapping LZ77 matches")
    p.add_argument("--strategy", choices=["greedy", "optimal", "flexible", "reverse", "all"], default="all")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--tokens", action="store_true", help="include the token list")
    _add_scale_flags(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("verify", help="run the property battery; exit 1 on any violation")
    p.add_argument("input", nargs="?")
    p.add_argument("--random", type=int, help="number of random texts")
    p.add_argument("--len", type=int, default=32, help="length of each random text")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--generator", choices=[*GENERATORS, "mixed"], default="mixed")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-failures", type=int, default=20, dest="max_failures")
    _add_dictionary_flags(p)
    _add_scale_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="write the parse graph as DOT")
    p.add_argument("input")
    _add_dictionary_flags(p)
    p.add_argument("--highlight", choices=["greedy", "optimal", "flexible"])
    _add_scale_flags(p)
    p.set_defaults(func=cmd_graph)

    for name, func in (("compress", cmd_compress), ("decompress", cmd_decompress)):
        p = sub.add_parser(name, help=f"{name} with the LZSS-style codec")
        p.add_argument("input", help="input path or '-'")
        p.add_argument("output", help="output path or '-'")
        if name == "compress":
            p.add_argument("--offset-bits", type=int, default=12, dest="offset_bits")
            p.add_argument("--length-bits", type=int, default=4, dest="length_bits")
            p.add_argument("--strategy", choices=[s.value for s in codec.Strategy], default="greedy")
        p.set_defaults(func=func)

    p = sub.add_parser("search", help="look for texts where greedy is not optimal")
    p.add_argument("--family", choices=[f.value for f in Family], default="lz78")
    p.add_argument("--window", type=parse_window, default=None,
                   help="fix the LZ77 window (default: cycle 1,2,4,8,unbounded)")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--max-len", type=int, default=24, dest="max_len")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", help="token counts and payload sizes over a corpus, as CSV")
    p.add_argument("corpus")
    _add_dictionary_flags(p, window=False)
    p.add_argument("--windows", default=DEFAULT_BENCH_WINDOWS)
    p.add_argument("--strategies", default="greedy,optimal")
    _add_scale_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lzpl {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LzplError, OSError) as exc:
        print(f"lzpl {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
