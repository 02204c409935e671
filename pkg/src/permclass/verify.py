"""Verification suites shared by the CLI: each check yields a named
pass/fail line, with a witness or the first mismatch on failure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from . import classgen, crenellation, series
from .perm import DEFAULT_BASIS, PatternSet, inverse

# Published data for the default basis.
PUBLISHED_CLASS_COUNTS = (1, 2, 6, 23, 101, 477, 2343, 11762, 59786, 306132)
PUBLISHED_SIMPLE_COUNTS = {4: 2, 5: 4, 6: 14, 7: 40, 8: 122, 9: 364}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _run(name: str, fn: Callable[[], str | None]) -> CheckResult:
    try:
        detail = fn()
    except (AssertionError, ArithmeticError, ValueError) as exc:
        return CheckResult(name, False, str(exc))
    return CheckResult(name, True, detail or "")


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def structure_suite(max_n: int, basis: PatternSet = DEFAULT_BASIS, limit: int = 12) -> Iterator[CheckResult]:
    def props():
        report = classgen.verify_structure(max_n, basis, limit=limit)
        return "; ".join(report.lines()[-1:])

    yield _run(f"simple structure (no 3412, N/S shapes, halves) n=4..{max_n}", props)

    counts = {n: len(classgen.simple_members(n, basis, limit=limit)) for n in range(4, max_n + 1)}

    def recurrence():
        for n in range(4, max_n):
            expected = 3 * counts[n] + 2 * (-1) ** (n + 1)
            _expect(counts[n + 1] == expected, f"s_{n + 1} = {counts[n + 1]}, recurrence gives {expected}")
        return ", ".join(str(counts[n]) for n in sorted(counts))

    yield _run("simple counts satisfy s(n+1) = 3 s(n) + 2(-1)^(n+1)", recurrence)
    if basis == DEFAULT_BASIS:
        def published():
            for n, s in PUBLISHED_SIMPLE_COUNTS.items():
                if n in counts:
                    _expect(counts[n] == s, f"s_{n} = {counts[n]}, published {s}")

        yield _run("simple counts match the published table", published)


def codec_suite(max_n: int, basis: PatternSet = DEFAULT_BASIS, limit: int = 12) -> Iterator[CheckResult]:
    for n in range(4, max_n + 1):
        def check(n=n):
            words = crenellation.words_of_length(n)
            decoded = [crenellation.decode(w) for w in words]
            _expect(len(set(decoded)) == len(decoded), "decode is not injective")
            for w, p in zip(words, decoded):
                _expect(crenellation.encode(p) == w, f"encode(decode({w})) != {w}")
                _expect(
                    crenellation.letter_block_classes(w) == crenellation.allowed_block_classes(p),
                    f"letter block classes disagree for {w}",
                )
            via_words = crenellation.simples_via_words(n)
            brute = classgen.simple_members(n, basis, limit=limit)
            _expect(via_words == brute, f"{len(via_words)} word simples vs {len(brute)} brute-force simples")
            _expect(not set(decoded) & {inverse(p) for p in decoded}, "decoded half meets its inverse")
            return f"{len(words)} words, {len(brute)} simples"

        yield _run(f"codec n={n}: words <-> simples", check)


def inflation_suite(max_n: int, basis: PatternSet = DEFAULT_BASIS, limit: int = 12) -> Iterator[CheckResult]:
    def check():
        report = classgen.verify_inflation_profile(max_n, basis, limit=limit)
        return report.lines()[-1]

    yield _run(f"inflation profile n=4..{max_n}", check)


def series_suite(order: int, max_n: int = 10, limit: int = 12) -> Iterator[CheckResult]:
    def catalan():
        f = series.catalan_series(order)
        x = series.Series.x(order)
        series.assert_series_equal(f, x * (1 + f) * (1 + f), "catalan functional equation")
        _expect(f.integers()[1:] == series.catalan_numbers(order + 1)[1:], "catalan coefficients vs binomial formula")

    yield _run(f"catalan f = x(1+f)^2 to order {order}", catalan)
    yield _run(f"word series: automaton == closed form to order {order}", lambda: series.word_count_series(order) and None)

    def eq1():
        w = series.inflation_weights(order)
        series.assert_series_equal(
            series.weighted_automaton_series(w, order),
            series.automaton_rational_function(w, order),
            "weighted automaton vs rational form",
        )

    yield _run(f"weighted word GF: automaton == rational form to order {order}", eq1)
    yield _run(
        f"simple inflations: automaton == closed form to order {order}",
        lambda: series.simple_inflation_series(order) and None,
    )
    yield _run(f"class series: composition == closed form to order {order}", lambda: series.class_series(order) and None)

    top = min(max_n, order, len(PUBLISHED_CLASS_COUNTS))

    def brute_counts():
        f = series.class_series(max(order, top)).integers()
        counts = dict(classgen.count_class(top, limit=limit))
        for n in range(1, top + 1):
            _expect(f[n] == counts[n], f"[x^{n}] = {f[n]} but brute force counts {counts[n]}")
            _expect(f[n] == PUBLISHED_CLASS_COUNTS[n - 1], f"[x^{n}] = {f[n]}, published {PUBLISHED_CLASS_COUNTS[n - 1]}")
        return ", ".join(str(f[n]) for n in range(1, top + 1))

    yield _run(f"class series == brute force == published for n<={top}", brute_counts)

    def skew():
        s = series.skew_series(max(order, 5)).integers()
        for n in range(2, min(top, 7) + 1):
            brute = len(classgen.skew_decomposable_members(n, limit=limit))
            _expect(s[n] == brute, f"[x^{n}] skew = {s[n]} vs brute force {brute}")

    yield _run("skew series == brute-force skew decomposables", skew)


SUITES = ("structure", "codec", "inflation", "series")


def run_suites(names, *, max_n: int, order: int, basis: PatternSet = DEFAULT_BASIS, limit: int = 12) -> Iterator[CheckResult]:
    for name in names:
        if name == "structure":
            yield from structure_suite(max_n, basis, limit)
        elif name == "codec":
            yield from codec_suite(max_n, basis, limit)
        elif name == "inflation":
            yield from inflation_suite(max_n, basis, limit)
        elif name == "series":
            yield from series_suite(order, max_n, limit)
        else:
            raise ValueError(f"unknown suite {name!r}")
