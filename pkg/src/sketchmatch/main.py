"""Command-line front end: stream a text from stdin through a matcher."""

import argparse
import logging
import math
import sys
from typing import Iterator, Optional, Sequence, TextIO

from .config import Settings, load_settings
from .errors import ConfigurationError, EncodingError, InputFormatError, ParameterError
from .hashing.alphabet import Alphabet
from .hashing.fingerprint import params_new
from .matchers.filters import EXACT_WINDOW, FILTER_KINDS
from .matchers.k_mismatch import KMismatchMatcher
from .matchers.one_mismatch import OneMismatchMatcher
from .matchers.stream_match import ExactMatcher
from .utils.oracle import naive_hamming_scan, naive_wpm
from .weighted.weighted_match import (
    DICTIONARY,
    EXACTPM,
    KMISMATCH,
    WeightedBothMatcher,
    WeightedPatternMatcher,
    WeightedTextMatcher,
)
from .weighted.weighted_string import WeightedString, iter_weighted_symbols, parse_weighted

logger = logging.getLogger(__name__)

EXIT_INPUT = 2
EXIT_CONFIG = 3


def _add_commands(subparsers, settings: Settings) -> None:
    def common(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--pattern", required=True, help="File holding the pattern.")
        parser.add_argument("--seed", type=int, default=settings.seed, help="Seed for all random choices.")
        parser.add_argument("--alphabet", help="Closed alphabet for plain text, e.g. ACGT (default: any character).")
        parser.add_argument(
            "--max-text-len", type=int, default=settings.max_text_len, help="Longest text the fingerprints are sized for."
        )

    common(subparsers.add_parser("exact", help="Exact occurrences."))
    common(subparsers.add_parser("onemismatch", help="Occurrences within one mismatch, with corrections."))

    kmismatch = subparsers.add_parser("kmismatch", help="Occurrences within k mismatches, with corrections.")
    common(kmismatch)
    kmismatch.add_argument("--k", type=int, required=True, help="Mismatch budget.")
    kmismatch.add_argument("--filter", choices=FILTER_KINDS, default=EXACT_WINDOW, help="Distance filter.")
    kmismatch.add_argument("--prime-lo", type=int, default=settings.prime_lo, help="Override prime interval start.")
    kmismatch.add_argument("--prime-hi", type=int, default=settings.prime_hi, help="Override prime interval end.")

    wpm = subparsers.add_parser("wpm", help="Weighted pattern matching.")
    common(wpm)
    wpm.add_argument("--mode", choices=("pw", "wt", "both"), required=True, help="Which side is weighted.")
    wpm.add_argument("--z", type=float, required=True, help="Probability threshold is 1/z.")
    wpm.add_argument("--epsilon", type=float, default=0.1, help="Approximation slack for weighted texts.")
    wpm.add_argument("--method", choices=(DICTIONARY, KMISMATCH, EXACTPM), help="Candidate-finding method.")
    wpm.add_argument("--prime-lo", type=int, default=settings.prime_lo, help="Override prime interval start.")
    wpm.add_argument("--prime-hi", type=int, default=settings.prime_hi, help="Override prime interval end.")


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sketchmatch", description="Streaming pattern matching with mismatches.")
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level (default from environment).")
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_commands(subparsers, settings)
    oracle = subparsers.add_parser("oracle", help="Brute-force reference run of a subcommand.")
    _add_commands(oracle.add_subparsers(dest="oracle_command", required=True), settings)
    return parser


def _read_pattern(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read().rstrip("\r\n")
    except OSError as exc:
        raise InputFormatError(f"cannot read pattern file {path}: {exc.strerror}") from None


def _read_weighted_pattern(path: str) -> WeightedString:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_weighted(handle)
    except OSError as exc:
        raise InputFormatError(f"cannot read pattern file {path}: {exc.strerror}") from None


def _plain_symbols(stream: TextIO, alphabet: Alphabet) -> Iterator[str]:
    """Characters of the stream; line breaks separate but are not symbols.

    Raises:
        InputFormatError: For a symbol outside ``alphabet``, with its line number.
    """
    for line_number, line in enumerate(stream, start=1):
        for symbol in line:
            if symbol in "\r\n":
                continue
            if symbol not in alphabet:
                raise InputFormatError(f"symbol {symbol!r} is outside the alphabet", line_number)
            yield symbol


def _corrections(items) -> str:
    tokens = [f"{position}:{pat}>{txt}" for position, pat, txt in items]
    return ",".join(tokens) if tokens else "-"


def _prime_interval(args) -> Optional[tuple]:
    if args.prime_lo is None and args.prime_hi is None:
        return None
    if args.prime_lo is None or args.prime_hi is None:
        raise ConfigurationError("--prime-lo and --prime-hi must be given together")
    return (args.prime_lo, args.prime_hi)


def _alphabet(args) -> Alphabet:
    return Alphabet(args.alphabet) if args.alphabet else Alphabet.open()


def _emit(out: TextIO, *fields) -> None:
    out.write("\t".join(str(field) for field in fields) + "\n")


def _run_stream(args, command: str, stdin: TextIO, out: TextIO, checks: bool) -> None:
    if command == "wpm":
        _run_weighted(args, stdin, out, checks)
        return

    pattern = _read_pattern(args.pattern)
    alphabet = _alphabet(args)
    params = params_new(args.max_text_len, args.seed, alphabet)
    if command == "exact":
        matcher = ExactMatcher(pattern, params)
    elif command == "onemismatch":
        matcher = OneMismatchMatcher(pattern, params)
    else:
        matcher = KMismatchMatcher(
            pattern, args.k, params, seed=args.seed, filter_kind=args.filter, prime_interval=_prime_interval(args)
        )

    for symbol in _plain_symbols(stdin, alphabet):
        for report in matcher.push(symbol):
            if command == "exact":
                _emit(out, report, 0, "-")
            elif command == "onemismatch":
                items = [(report.position, report.pattern_symbol, report.text_symbol)] if report.distance else []
                _emit(out, report.end, report.distance, _corrections(items))
            else:
                items = [(c.position, c.pattern_symbol, c.text_symbol) for c in report.corrections]
                fields = [report.end, report.distance, _corrections(items)]
                if not report.certified:
                    fields.append("uncertified")
                _emit(out, *fields)
        if checks and command == "exact":
            matcher.check_shape()
        out.flush()


def _run_weighted(args, stdin: TextIO, out: TextIO, checks: bool) -> None:
    alphabet = _alphabet(args)
    params = params_new(args.max_text_len, args.seed, alphabet)
    options = dict(params=params, seed=args.seed, prime_interval=_prime_interval(args))
    if args.mode == "pw":
        matcher = WeightedPatternMatcher(
            _read_weighted_pattern(args.pattern), args.z, args.method or DICTIONARY, **options
        )
        symbols = _plain_symbols(stdin, alphabet)
    elif args.mode == "wt":
        matcher = WeightedTextMatcher(_read_pattern(args.pattern), args.z, args.epsilon, args.method or EXACTPM, **options)
        symbols = iter_weighted_symbols(stdin)
    else:
        matcher = WeightedBothMatcher(
            _read_weighted_pattern(args.pattern), args.z, args.epsilon, args.method or DICTIONARY, **options
        )
        symbols = iter_weighted_symbols(stdin)

    for q, symbol in enumerate(symbols, start=1):
        value = matcher.push(symbol)
        if value is not None:
            _emit(out, q, f"{math.log(value):.12g}")
        if checks and args.mode != "pw":
            matcher.streams.check_invariants()
            for stream in matcher.streams.streams:
                stream.window.check_invariants()
        out.flush()


def _run_oracle(args, command: str, stdin: TextIO, out: TextIO) -> None:
    if command == "wpm":
        if not args.z > 1:
            raise ParameterError(f"z must exceed 1, got {args.z}")
        threshold = 1.0 / args.z
        if args.mode == "pw":
            pattern = _read_weighted_pattern(args.pattern)
            if args.z >= len(pattern):
                raise ConfigurationError(f"z must be smaller than the pattern length {len(pattern)}, got {args.z}")
            text = "".join(_plain_symbols(stdin, _alphabet(args)))
        elif args.mode == "wt":
            pattern = _read_pattern(args.pattern)
            text = WeightedString.from_rows(iter_weighted_symbols(stdin))
        else:
            pattern = _read_weighted_pattern(args.pattern)
            text = WeightedString.from_rows(iter_weighted_symbols(stdin))
        for offset, value in enumerate(naive_wpm(pattern, text, args.z, args.mode)):
            if value is not None and value >= threshold * (1 - 1e-9):
                _emit(out, len(pattern) + offset, f"{math.log(value):.12g}")
        return

    pattern = _read_pattern(args.pattern)
    alphabet = _alphabet(args)
    text = list(_plain_symbols(stdin, alphabet))
    k = {"exact": 0, "onemismatch": 1}.get(command)
    if k is None:
        k = args.k
        if not 1 <= k < len(pattern):
            raise ParameterError(f"k must satisfy 1 <= k < {len(pattern)}, got {k}")
    for end, distance, mismatches in naive_hamming_scan(pattern, text, k):
        _emit(out, end, distance, _corrections(mismatches))


def run(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """Run the CLI; returns the process exit code."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        settings = load_settings()
        args = build_parser(settings).parse_args(argv)
        level = logging.getLevelName(args.log_level.upper())
        if not isinstance(level, int):
            raise ConfigurationError(f"unknown log level {args.log_level!r}")
        logging.basicConfig(level=level, stream=stderr, format="%(levelname)s %(name)s: %(message)s")
        if args.command == "oracle":
            _run_oracle(args, args.oracle_command, stdin, stdout)
        else:
            _run_stream(args, args.command, stdin, stdout, settings.checks)
    except (InputFormatError, EncodingError) as exc:
        print(f"Error: {exc}", file=stderr)
        return EXIT_INPUT
    except (ConfigurationError, ParameterError) as exc:
        print(f"Error: {exc}", file=stderr)
        return EXIT_CONFIG
    return 0


def main() -> None:
    """Main entry point for the sketchmatch CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
