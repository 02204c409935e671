"""Truncated power series with exact rational coefficients, and the
generating functions of the class built from them.

A :class:`Series` of order ``N`` stores ``c_0 .. c_N``; everything beyond
``x^N`` is unknown.  Binary operations truncate to the smaller order.
Division by a series of valuation ``v`` (cancelling ``x^v``) loses ``v``
orders of precision, so its result has order ``min(orders) - v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, Sequence, Union

from .crenellation import DFA_ACCEPT, DFA_START, DFA_TABLE

DEFAULT_ORDER = 30

Scalar = Union[int, Fraction]


class SeriesError(ArithmeticError):
    pass


class DivisionByNonUnit(SeriesError):
    pass


class SeriesMismatch(SeriesError):
    def __init__(self, what: str, index: int, left, right):
        super().__init__(f"{what}: coefficients differ at x^{index} ({left} != {right})")
        self.index = index


@dataclass(frozen=True)
class Series:
    coeffs: tuple

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", cs)

    # constructors
    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls.monomial(0, 1, order)

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1, order: int = DEFAULT_ORDER) -> "Series":
        cs = [0] * (order + 1)
        if power <= order:
            cs[power] = coeff
        return cls(cs)

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls.monomial(1, 1, order)

    @classmethod
    def polynomial(cls, coeffs: Sequence[Scalar], order: int = DEFAULT_ORDER) -> "Series":
        cs = list(coeffs[: order + 1]) + [0] * max(0, order + 1 - len(coeffs))
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise IndexError(f"x^{n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (order + 1 if none is known)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.order + 1

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs[: order + 1])

    def integers(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(c.numerator)
        return out

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.monomial(0, other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return Series(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Series(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series(c * other for c in self.coeffs)
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        # skip the leading zeros, which dominate the weighted-automaton sums
        va, vb = self.valuation(), other.valuation()
        out = [Fraction(0)] * (n + 1)
        for i in range(va, n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(vb, n - i + 1):
                if b[j]:
                    out[i + j] += ai * b[j]
        return Series(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return Series.one(self.order) / self ** (-k)
        result = Series.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series(c / other for c in self.coeffs)
        if not isinstance(other, Series):
            return NotImplemented
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(self._coerce(other), self)

    def shift(self, k: int) -> "Series":
        """Multiply by x^k (order grows by k, so no information is lost)."""
        return Series([0] * k + list(self.coeffs))

    def __str__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(x^{self.order + 1})"


def divide(num: Series, den: Series) -> Series:
    """``q`` with ``q * den == num``; a common factor x^v is cancelled first."""
    v = den.valuation()
    if v > den.order:
        raise DivisionByNonUnit("division by a series with no known nonzero coefficient")
    if v:
        if any(num.coeffs[:v]):
            raise DivisionByNonUnit(f"denominator has valuation {v} but the numerator does not vanish to that order")
        num = Series(num.coeffs[v:])
        den = Series(den.coeffs[v:])
    n = min(num.order, den.order)
    a, b = num.coeffs, den.coeffs
    inv0 = 1 / b[0]
    q: list[Fraction] = []
    for i in range(n + 1):
        acc = a[i]
        for j in range(1, i + 1):
            if b[j]:
                acc -= b[j] * q[i - j]
        q.append(acc * inv0)
    return Series(q)


def sqrt_one_plus(s: Series) -> Series:
    """The principal square root of ``1 + s`` (constant term 1); ``s(0) = 0``."""
    if s.coeffs[0]:
        raise SeriesError("sqrt_one_plus needs a series with zero constant term")
    n = s.order
    u = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = s.coeffs[k] - sum(u[i] * u[k - i] for i in range(1, k))
        u[k] = acc / 2
    return Series(u)


def assert_series_equal(left: Series, right: Series, what: str = "series") -> None:
    """Compare every coefficient up to the common order."""
    n = min(left.order, right.order)
    for i in range(n + 1):
        if left.coeffs[i] != right.coeffs[i]:
            raise SeriesMismatch(what, i, left.coeffs[i], right.coeffs[i])


# -- generating functions -----------------------------------------------------


def sqrt_one_minus_4x(order: int = DEFAULT_ORDER) -> Series:
    return sqrt_one_plus(Series.monomial(1, -4, order))


def catalan_series(order: int = DEFAULT_ORDER) -> Series:
    """Nonempty Catalan GF: C_n at x^n for n >= 1, constant term 0."""
    if order < 1:
        raise ValueError("order must be >= 1")
    # (1 - 2x - sqrt(1 - 4x)) / (2x); one extra order absorbs the division by x
    r = sqrt_one_minus_4x(order + 1)
    num = Series.polynomial([1, -2], order + 1) - r
    return num / Series.monomial(1, 2, order + 1)


def catalan_numbers(count: int) -> list[int]:
    return [comb(2 * n, n) // (n + 1) for n in range(count)]


def _dfa_path_counts(max_len: int) -> list[int]:
    """Number of accepted DFA paths of each length 0..max_len."""
    vec = {s: 0 for s in DFA_TABLE}
    vec[DFA_START] = 1
    counts = []
    for _ in range(max_len + 1):
        counts.append(sum(vec[s] for s in DFA_ACCEPT))
        nxt = {s: 0 for s in DFA_TABLE}
        for state, mult in vec.items():
            if mult:
                for target in DFA_TABLE[state].values():
                    nxt[target] += mult
        vec = nxt
    return counts


def word_count_closed_form(order: int = DEFAULT_ORDER) -> Series:
    """x^4 / ((1 - 3x)(1 + x))."""
    return Series.monomial(4, 1, order) / Series.polynomial([1, -2, -3], order)


def word_count_series(order: int = DEFAULT_ORDER) -> Series:
    """Valid words counted by length, computed from the automaton and checked
    against the closed form."""
    if order < 4:
        raise ValueError("order must be >= 4")
    counts = _dfa_path_counts(order - 2)
    dp = Series([0, 0] + counts)
    assert_series_equal(dp, word_count_closed_form(order), "word series: automaton vs closed form")
    return dp


def simple_count_series(order: int = DEFAULT_ORDER) -> Series:
    """Simple members of length >= 4 by length: twice the word series."""
    return word_count_series(order) * 2


LetterWeights = Mapping[str, Series]


def weighted_automaton_series(weights: LetterWeights, order: int = DEFAULT_ORDER) -> Series:
    """Sum over accepted words of the product of their letter weights.

    The automaton reads words without their opening ``dd``, whose weight
    ``d^2`` multiplies the result.  Weights must have zero constant term, so
    paths longer than ``order`` contribute nothing.
    """
    ws = {ch: weights[ch].truncate(order) for ch in "abcd"}
    if any(w.coeffs[0] for w in ws.values()):
        raise SeriesError("letter weights must have zero constant term")
    vec = {s: Series.zero(order) for s in DFA_TABLE}
    vec[DFA_START] = Series.one(order)
    total = Series.zero(order)
    for _ in range(order + 1):
        for s in DFA_ACCEPT:
            total = total + vec[s]
        nxt = {s: Series.zero(order) for s in DFA_TABLE}
        live = False
        for state, val in vec.items():
            if val.valuation() > order:
                continue
            for ch, target in DFA_TABLE[state].items():
                nxt[target] = nxt[target] + val * ws[ch]
                live = True
        if not live:
            break
        vec = nxt
    return total * ws["d"] * ws["d"]


def automaton_rational_function(weights: LetterWeights, order: int = DEFAULT_ORDER) -> Series:
    """The multivariate rational form of the weighted word GF,
    d^4 (1 + b) / (1 - 2abc - ac - ab - bd - bc - bcd - cd - d),
    evaluated at the given letter weights."""
    a, b, c, d = (weights[ch].truncate(order) for ch in "abcd")
    den = 1 - 2 * a * b * c - a * c - a * b - b * d - b * c - b * c * d - c * d - d
    return d ** 4 * (1 + b) / den


def inflation_weights(order: int = DEFAULT_ORDER) -> dict[str, Series]:
    """Catalan weight for a, c, d points; x/(1-x) for b points."""
    cat = catalan_series(order)
    b = Series.x(order) / Series.polynomial([1, -1], order)
    return {"a": cat, "b": b, "c": cat, "d": cat}


def simple_inflation_closed_form(order: int = DEFAULT_ORDER) -> Series:
    """(1-2x-r)^4 / (8x^2 (x^2 + 3x - 1 + r - x r)) with r = sqrt(1-4x)."""
    work = order + 4  # the denominator has valuation 4
    r = sqrt_one_minus_4x(work)
    x = Series.x(work)
    num = (1 - 2 * x - r) ** 4
    den = 8 * x * x * (x * x + 3 * x - 1 + r - x * r)
    return (num / den).truncate(order)


def simple_inflation_series(order: int = DEFAULT_ORDER) -> Series:
    """Inflations of simples of length >= 4: doubled weighted word GF,
    checked against the closed form."""
    if order < 4:
        raise ValueError("order must be >= 4")
    via_words = weighted_automaton_series(inflation_weights(order), order) * 2
    assert_series_equal(via_words, simple_inflation_closed_form(order), "simple inflations: automaton vs closed form")
    return via_words


def skew_indecomposable_av312_series(order: int = DEFAULT_ORDER) -> Series:
    return catalan_series(order) * Series.polynomial([1, -1], order)


def skew_series(order: int = DEFAULT_ORDER) -> Series:
    """Skew decomposable members: f_cat^2 (1 - x)."""
    if order < 2:
        raise ValueError("order must be >= 2")
    cat = catalan_series(order)
    return cat * cat * Series.polynomial([1, -1], order)


def class_closed_form(order: int = DEFAULT_ORDER) -> Series:
    """(1-3x-2x^2 - (1-x-2x^2) r) / (1-3x - (1-x+2x^2) r) with r = sqrt(1-4x)."""
    work = order + 2  # the denominator has valuation 2
    r = sqrt_one_minus_4x(work)
    P = lambda cs: Series.polynomial(cs, work)  # noqa: E731
    num = P([1, -3, -2]) - P([1, -1, -2]) * r
    den = P([1, -3]) - P([1, -1, 2]) * r
    return (num / den).truncate(order)


def sum_indecomposable_series(order: int = DEFAULT_ORDER) -> Series:
    """x + skew decomposables + inflations of simples."""
    return Series.x(order) + skew_series(order) + simple_inflation_series(order)


def class_series(order: int = DEFAULT_ORDER) -> Series:
    """Generating function of the class (without the empty permutation),
    from g / (1 - g) and checked against the closed form."""
    if order < 1:
        raise ValueError("order must be >= 1")
    work = max(order, 4)
    g = sum_indecomposable_series(work)
    f = (g / (1 - g)).truncate(order)
    assert_series_equal(f, class_closed_form(order), "class series: composition vs closed form")
    return f


SERIES_BY_NAME: dict[str, Callable[[int], Series]] = {
    "class": class_series,
    "simples": simple_count_series,
    "words": word_count_series,
    "catalan": catalan_series,
    "skew": skew_series,
    "inflations": simple_inflation_series,
}
