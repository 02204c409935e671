"""Permutations in one-line notation and the pattern machinery built on them.

Permutations are plain tuples of the values ``1..n`` (the :class:`Perm`
subclass adds validation and a compact text form).  Every function accepts
any sequence of ints, so the hot loops elsewhere can pass raw tuples or
``bytes`` without conversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class PermError(ValueError):
    """Base class for malformed permutation input."""


class DuplicateValue(PermError):
    pass


class EmptyInput(PermError):
    pass


class NotAPermutation(PermError):
    pass


class BlockCountMismatch(PermError):
    pass


class EmptyBlock(PermError):
    pass


class Perm(tuple):
    """An immutable permutation of ``1..n`` in one-line notation."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise NotAPermutation(f"{values!r} is not a permutation of 1..{len(values)}")
        return super().__new__(cls, values)

    @classmethod
    def _trusted(cls, values: Iterable[int]) -> "Perm":
        return tuple.__new__(cls, values)

    def __repr__(self) -> str:
        return f"Perm({format_perm(self)})"

    def __str__(self) -> str:
        return format_perm(self)


def parse_perm(text: str) -> Perm:
    """Parse ``"2,5,3,1,4"`` (or the digit string ``"25314"`` when n <= 9)."""
    text = text.strip()
    if not text:
        raise EmptyInput("empty permutation text")
    if "," in text:
        try:
            values = [int(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise NotAPermutation(f"bad permutation text {text!r}") from exc
    else:
        if not text.isdigit():
            raise NotAPermutation(f"bad permutation text {text!r}")
        values = [int(ch) for ch in text]
        if len(values) > 9:
            raise NotAPermutation("digit-string form only allowed for n <= 9; use commas")
    return Perm(values)


def format_perm(p: Sequence[int]) -> str:
    return ",".join(str(v) for v in p)


def pattern_of(seq: Sequence[int]) -> Perm:
    """The permutation order-isomorphic to a sequence of distinct integers."""
    if len(seq) == 0:
        raise EmptyInput("pattern_of needs a nonempty sequence")
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    prev = None
    for rank, idx in enumerate(order, 1):
        if seq[idx] == prev:
            raise DuplicateValue(f"value {prev} repeats")
        prev = seq[idx]
        out[idx] = rank
    return Perm._trusted(out)


def _std(seq: Sequence[int]) -> tuple:
    # pattern_of without the checks, for internal use on known-distinct input
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    for rank, idx in enumerate(order, 1):
        out[idx] = rank
    return tuple(out)


@lru_cache(maxsize=None)
def _bounds(needle: tuple) -> tuple:
    """For each needle index i, the earlier indices holding the nearest value
    below and above needle[i] (or -1)."""
    out = []
    for i, v in enumerate(needle):
        lo = hi = -1
        for j in range(i):
            w = needle[j]
            if w < v and (lo < 0 or w > needle[lo]):
                lo = j
            elif w > v and (hi < 0 or w < needle[hi]):
                hi = j
        out.append((lo, hi))
    return tuple(out)


def _embed(hay, needle: tuple, pin_index: int = -1, pin_pos: int = -1) -> bool:
    k = len(needle)
    n = len(hay)
    bounds = _bounds(needle)
    vals = [0] * k

    def search(i: int, start: int) -> bool:
        if i == k:
            return True
        lo, hi = bounds[i]
        lo_v = vals[lo] if lo >= 0 else 0
        hi_v = vals[hi] if hi >= 0 else 1 << 30
        if pin_index >= 0:
            if i == pin_index:
                if pin_pos < start:
                    return False
                v = hay[pin_pos]
                if lo_v < v < hi_v:
                    vals[i] = v
                    return search(i + 1, pin_pos + 1)
                return False
            stop = pin_pos - (pin_index - i) + 1 if i < pin_index else n - (k - i) + 1
        else:
            stop = n - (k - i) + 1
        for pos in range(start, stop):
            v = hay[pos]
            if lo_v < v < hi_v:
                vals[i] = v
                if search(i + 1, pos + 1):
                    return True
        return False

    return search(0, 0)


def contains(haystack: Sequence[int], needle: Sequence[int]) -> bool:
    """True iff some subsequence of ``haystack`` has pattern ``needle``."""
    if len(needle) > len(haystack):
        return False
    if len(needle) == 0:
        return True
    return _embed(haystack, tuple(needle))


def contains_at(haystack: Sequence[int], needle: Sequence[int], needle_index: int, position: int) -> bool:
    """Containment restricted to occurrences mapping ``needle[needle_index]``
    onto ``haystack[position]``."""
    if len(needle) > len(haystack):
        return False
    return _embed(haystack, tuple(needle), needle_index, position)


@dataclass(frozen=True)
class PatternSet:
    """A finite set of patterns kept in (length, lexicographic) order."""

    patterns: tuple

    def __init__(self, patterns: Iterable[Sequence[int]]):
        pats = {Perm(p) for p in patterns}
        if any(len(p) == 0 for p in pats):
            raise EmptyInput("patterns must be nonempty")
        object.__setattr__(self, "patterns", tuple(sorted(pats, key=lambda p: (len(p), p))))

    @classmethod
    def parse(cls, text: str) -> "PatternSet":
        return cls(parse_perm(tok) for tok in text.split(",") if tok.strip())

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        return ",".join("".join(map(str, p)) if len(p) <= 9 else format_perm(p) for p in self.patterns)

    def is_antichain(self) -> bool:
        return not any(a != b and contains(b, a) for a in self.patterns for b in self.patterns)


DEFAULT_BASIS = PatternSet([(4, 2, 3, 1), (3, 5, 1, 4, 2), (4, 2, 5, 1, 3), (3, 5, 1, 6, 2, 4)])


def avoids_all(p: Sequence[int], basis: PatternSet = DEFAULT_BASIS) -> bool:
    return not any(contains(p, b) for b in basis)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p, 1):
        out[v - 1] = i
    return Perm._trusted(out)


def reverse_complement(p: Sequence[int]) -> Perm:
    n = len(p)
    return Perm._trusted(n + 1 - v for v in reversed(p))


def extreme_pattern(p: Sequence[int]) -> Perm:
    """Pattern of the first, last, greatest and least points.

    Coinciding roles (e.g. a permutation starting with its minimum) are
    merged, so the result may be shorter than 4.
    """
    if len(p) == 0:
        raise EmptyInput("extreme_pattern of the empty permutation")
    n = len(p)
    positions = sorted({0, n - 1, p.index(max(p)), p.index(min(p))})
    return pattern_of([p[i] for i in positions])


@dataclass(frozen=True, order=True)
class IntervalSpan:
    start: int  # 1-based
    length: int

    def positions(self) -> range:
        return range(self.start - 1, self.start - 1 + self.length)


def proper_intervals(p: Sequence[int]) -> list[IntervalSpan]:
    """Windows of length 2..n-1 whose values form a contiguous range."""
    n = len(p)
    out = []
    for i in range(n):
        lo = hi = p[i]
        for j in range(i + 1, n):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            length = j - i + 1
            if length == n:
                break
            if hi - lo == j - i:
                out.append(IntervalSpan(i + 1, length))
    return out


def is_simple(p: Sequence[int]) -> bool:
    """Simple iff no proper interval; lengths 1 and 2 count as simple."""
    n = len(p)
    for i in range(n - 1):
        lo = hi = p[i]
        # windows starting at i of length 2..n-1
        for j in range(i + 1, min(n, i + n - 1)):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i:
                return False
    return True


def inflate(skeleton: Sequence[int], blocks: Sequence[Sequence[int]]) -> Perm:
    """Replace point ``i`` of the skeleton by an interval with pattern ``blocks[i]``."""
    if len(skeleton) != len(blocks):
        raise BlockCountMismatch(f"{len(skeleton)} points but {len(blocks)} blocks")
    if any(len(b) == 0 for b in blocks):
        raise EmptyBlock("blocks must be nonempty")
    # value offset of each block = total size of blocks on smaller skeleton values
    sizes = [0] * (len(skeleton) + 1)
    for v, b in zip(skeleton, blocks):
        sizes[v] = len(b)
    offset = [0] * (len(skeleton) + 1)
    for v in range(1, len(skeleton)):
        offset[v + 1] = offset[v] + sizes[v]
    out = []
    for v, b in zip(skeleton, blocks):
        base = offset[v]
        out.extend(base + x for x in b)
    return Perm._trusted(out)


@dataclass(frozen=True)
class SkeletonDecomposition:
    skeleton: Perm
    blocks: tuple

    def inflate(self) -> Perm:
        return inflate(self.skeleton, self.blocks)


def _sum_split(p: Sequence[int]) -> int:
    """Length of the shortest nonempty prefix occupying values 1..k (n if none shorter)."""
    hi = 0
    for k, v in enumerate(p, 1):
        hi = max(hi, v)
        if hi == k:
            return k
    return len(p)


def _skew_split(p: Sequence[int]) -> int:
    n = len(p)
    lo = n + 1
    for k, v in enumerate(p, 1):
        lo = min(lo, v)
        if lo == n - k + 1:
            return k
    return n


def decompose(p: Sequence[int]) -> SkeletonDecomposition:
    """Substitution decomposition; for 12/21 skeletons the first block is
    sum- (resp. skew-) indecomposable."""
    n = len(p)
    if n == 0:
        raise EmptyInput("decompose of the empty permutation")
    if n == 1:
        return SkeletonDecomposition(Perm._trusted((1,)), (Perm._trusted((1,)),))
    k = _sum_split(p)
    if k < n:
        return SkeletonDecomposition(Perm._trusted((1, 2)), (_perm_std(p[:k]), _perm_std(p[k:])))
    k = _skew_split(p)
    if k < n:
        return SkeletonDecomposition(Perm._trusted((2, 1)), (_perm_std(p[:k]), _perm_std(p[k:])))
    # skeleton of length >= 4: maximal proper intervals partition the positions,
    # and the one containing position i is the longest proper interval starting at i
    blocks = []
    reps = []
    i = 0
    while i < n:
        lo = hi = p[i]
        best = i
        for j in range(i + 1, n):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i and j - i + 1 < n:
                best = j
        blocks.append(_perm_std(p[i:best + 1]))
        reps.append(p[i])
        i = best + 1
    return SkeletonDecomposition(_perm_std(reps), tuple(blocks))


def _perm_std(seq: Sequence[int]) -> Perm:
    return Perm._trusted(_std(seq))


def is_sum_decomposable(p: Sequence[int]) -> bool:
    return len(p) > 1 and _sum_split(p) < len(p)


def is_skew_decomposable(p: Sequence[int]) -> bool:
    return len(p) > 1 and _skew_split(p) < len(p)


def _monotone(seq: Sequence[int], increasing: bool) -> bool:
    if increasing:
        return all(a < b for a, b in zip(seq, seq[1:]))
    return all(a > b for a, b in zip(seq, seq[1:]))


def is_n_shaped(p: Sequence[int]) -> bool:
    """Extreme pattern 2413 with increasing/decreasing/increasing runs split
    at the maximum and the minimum."""
    if len(p) < 4 or extreme_pattern(p) != (2, 4, 1, 3):
        return False
    top = p.index(max(p))
    bottom = p.index(min(p))
    return (
        _monotone(p[: top + 1], True)
        and _monotone(p[top : bottom + 1], False)
        and _monotone(p[bottom:], True)
    )


def is_s_shaped(p: Sequence[int]) -> bool:
    """Extreme pattern 3142 with the value bands min..last, last..first,
    first..max occupied by increasing, decreasing, increasing positions."""
    if len(p) < 4 or extreme_pattern(p) != (3, 1, 4, 2):
        return False
    return is_n_shaped(inverse(p))


def permutations_of(n: int) -> Iterable[Perm]:
    from itertools import permutations

    for t in permutations(range(1, n + 1)):
        yield Perm._trusted(t)
