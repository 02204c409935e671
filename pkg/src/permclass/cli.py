"""Command-line front end.

Exit statuses: 0 success, 1 verification failure, 2 usage or limit error,
3 invalid word or permutation.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from . import classgen, crenellation, series, verify
from .perm import DEFAULT_BASIS, PatternSet, PermError, format_perm, parse_perm

HARD_LIMIT = 12
MAX_ORDER = 64

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _emit(out, line: str) -> None:
    out.write(line + "\n")
    out.flush()


def _basis(args) -> PatternSet:
    if not getattr(args, "basis", None):
        return DEFAULT_BASIS
    try:
        return PatternSet.parse(args.basis)
    except PermError as exc:
        raise UsageError(f"bad --basis: {exc}") from None


def _limit(args, n: int) -> int:
    if n > HARD_LIMIT and not args.force:
        raise UsageError(f"n = {n} exceeds the limit {HARD_LIMIT}; pass --force to override")
    return max(n, HARD_LIMIT)


def run_count(args) -> int:
    basis = _basis(args)
    limit = _limit(args, args.max_n)
    golden = basis == DEFAULT_BASIS
    status = EXIT_OK
    with _output(args.out) as out:
        if args.format == "csv":
            _emit(out, "n,count")
        for level in classgen.iter_levels(args.max_n, basis, limit=limit, workers=args.workers):
            n, count = level.n, len(level)
            if args.format == "csv":
                _emit(out, f"{n},{count}")
            elif args.format == "jsonl":
                _emit(out, json.dumps({"n": n, "count": count}))
            else:
                _emit(out, f"{n}\t{count}")
            if golden and n <= len(verify.PUBLISHED_CLASS_COUNTS) and count != verify.PUBLISHED_CLASS_COUNTS[n - 1]:
                print(f"count at n={n} differs from the published value {verify.PUBLISHED_CLASS_COUNTS[n - 1]}", file=sys.stderr)
                status = EXIT_VERIFY
    return status


def run_members(args) -> int:
    basis = _basis(args)
    limit = _limit(args, args.n)
    level = None
    for level in classgen.iter_levels(args.n, basis, limit=limit, workers=args.workers):
        pass
    with _output(args.out) as out:
        for p in level:
            if args.format == "jsonl":
                _emit(out, json.dumps({"n": args.n, "perm": list(p)}, separators=(",", ":")))
            else:
                _emit(out, format_perm(p))
    return EXIT_OK


def run_census(args) -> int:
    basis = _basis(args)
    limit = _limit(args, args.max_n)
    with _output(args.out) as out:
        if args.format != "jsonl":
            _emit(out, classgen.CENSUS_HEADER)
        for level in classgen.iter_levels(args.max_n, basis, limit=limit, workers=args.workers):
            rec = classgen.census(level)
            if args.format == "jsonl":
                hist = {"".join(map(str, k)): v for k, v in rec.extreme_pattern_histogram.items()}
                _emit(out, json.dumps({
                    "n": rec.n, "class": rec.class_count, "simple": rec.simple_count,
                    "skew_dec": rec.skew_dec_count, "sum_indec": rec.sum_indec_count, "extremes": hist,
                }))
            else:
                _emit(out, rec.csv_row())
    return EXIT_OK


def run_words(args) -> int:
    with _output(args.out) as out:
        if args.format == "csv":
            _emit(out, "word,perm")
        for w in crenellation.words_of_length(args.n):
            p = crenellation.decode(w)
            if args.format == "csv":
                _emit(out, f'{w},"{format_perm(p)}"')
            elif args.format == "jsonl":
                _emit(out, json.dumps({"word": w, "perm": list(p)}, separators=(",", ":")))
            else:
                _emit(out, f"{w}\t{format_perm(p)}")
    return EXIT_OK


def run_decode(args) -> int:
    word = args.word.strip()
    try:
        p = crenellation.decode(word)
    except crenellation.WordError as exc:
        raise InputError(str(exc)) from None
    with _output(args.out) as out:
        if args.format == "jsonl":
            _emit(out, json.dumps({"word": word, "perm": list(p)}, separators=(",", ":")))
        else:
            _emit(out, format_perm(p))
    return EXIT_OK


def run_encode(args) -> int:
    try:
        p = parse_perm(args.perm)
        w = crenellation.encode(p)
    except (PermError, crenellation.NotEncodable) as exc:
        raise InputError(str(exc)) from None
    with _output(args.out) as out:
        if args.format == "jsonl":
            _emit(out, json.dumps({"word": w, "perm": list(p)}, separators=(",", ":")))
        else:
            _emit(out, w)
    return EXIT_OK


def run_series(args) -> int:
    if not 1 <= args.order <= MAX_ORDER:
        raise UsageError(f"--order must be between 1 and {MAX_ORDER}")
    fn = series.SERIES_BY_NAME[args.which]
    # the word-based series need order >= 4; compute deeper and truncate
    coeffs = fn(max(args.order, 4)).integers()[1 : args.order + 1]
    with _output(args.out) as out:
        if args.format == "csv":
            _emit(out, "n,coefficient")
            for n, c in enumerate(coeffs, 1):
                _emit(out, f"{n},{c}")
        elif args.format == "jsonl":
            for n, c in enumerate(coeffs, 1):
                _emit(out, json.dumps({"n": n, "coefficient": c}))
        else:
            _emit(out, ",".join(map(str, coeffs)))
    return EXIT_OK


def run_verify(args) -> int:
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    if args.max_n < 4:
        raise UsageError("--max-n must be at least 4")
    if "inflation" in names and args.max_n < 5:
        raise UsageError("the inflation suite needs --max-n >= 5")
    if not 4 <= args.order <= MAX_ORDER:
        raise UsageError(f"--order must be between 4 and {MAX_ORDER}")
    limit = _limit(args, args.max_n)
    failed = 0
    with _output(args.out) as out:
        for result in verify.run_suites(names, max_n=args.max_n, order=args.order, limit=limit):
            _emit(out, result.line())
            failed += not result.passed
        _emit(out, f"{'FAILED' if failed else 'OK'}: {failed} failing check(s)")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permclass",
        description="Enumerate and verify the permutation class Av(4231, 35142, 42513, 351624).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="plain"):
        p.add_argument("--format", choices=("plain", "csv", "jsonl"), default=default_format)
        p.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")

    def enumeration(p):
        p.add_argument("--basis", help="comma-separated basis override, e.g. 4231,35142,42513,351624")
        p.add_argument("--force", action="store_true", help=f"allow lengths above {HARD_LIMIT}")
        p.add_argument("--workers", type=int, default=1, help="worker processes for level expansion")

    p = sub.add_parser("count", help="class counts by length")
    p.add_argument("--max-n", type=int, required=True)
    enumeration(p)
    common(p)
    p.set_defaults(func=run_count)

    p = sub.add_parser("members", help="stream the members of one length")
    p.add_argument("--n", type=int, required=True)
    enumeration(p)
    common(p, "jsonl")
    p.set_defaults(func=run_members)

    p = sub.add_parser("census", help="class/simple/skew/sum-indecomposable counts by length")
    p.add_argument("--max-n", type=int, required=True)
    enumeration(p)
    common(p, "csv")
    p.set_defaults(func=run_census)

    p = sub.add_parser("words", help="valid code words of one length with their permutations")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=run_words)

    p = sub.add_parser("decode", help="word -> permutation")
    p.add_argument("--word", required=True)
    common(p)
    p.set_defaults(func=run_decode)

    p = sub.add_parser("encode", help="permutation -> word")
    p.add_argument("--perm", required=True)
    common(p)
    p.set_defaults(func=run_encode)

    p = sub.add_parser("series", help="exact generating-function coefficients x^1..x^order")
    p.add_argument("--which", choices=tuple(series.SERIES_BY_NAME), required=True)
    p.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    common(p)
    p.set_defaults(func=run_series)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    p.add_argument("--force", action="store_true", help=f"allow lengths above {HARD_LIMIT}")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=run_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"permclass: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except classgen.LimitExceeded as exc:
        print(f"permclass: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"permclass: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
