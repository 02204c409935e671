"""Brute-force enumeration of a permutation class, level by level.

Level ``n + 1`` is grown from level ``n`` by inserting the new maximum in
every slot.  Deleting the maximum of a member gives a member, so every
member of length ``n + 1`` is produced exactly once, from its max-deletion.
A child can only contain a basis element through the new maximum, so the
avoidance test is pinned to that point (see :func:`extend_by_max`).

Members are stored internally as ``bytes`` (one byte per entry): byte
order is lexicographic order, and the footprint is small enough to keep
whole levels in memory up to n = 11.
"""

from __future__ import annotations

import mmap
import os
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .perm import (
    DEFAULT_BASIS,
    PatternSet,
    Perm,
    avoids_all,
    contains,
    contains_at,
    decompose,
    extreme_pattern,
    inflate,
    is_n_shaped,
    is_s_shaped,
    is_simple,
    is_skew_decomposable,
    is_sum_decomposable,
    permutations_of,
)

DEFAULT_LIMIT = 11
SPILL_THRESHOLD = 2_000_000


class LimitExceeded(ValueError):
    pass


class StructureViolation(AssertionError):
    def __init__(self, message: str, witness: Sequence[int] | None = None):
        super().__init__(message if witness is None else f"{message}: {Perm(witness)}")
        self.witness = None if witness is None else Perm(witness)


class ProfileViolation(StructureViolation):
    pass


class _Packed:
    """Fixed-width records of a sorted level, in a list or spilled to a file."""

    def __init__(self, n: int, records: list, spill_threshold: int = SPILL_THRESHOLD):
        self.n = n
        self._list = records
        self._mm = None
        self._path = None
        if len(records) > spill_threshold and n > 0:
            fd, self._path = tempfile.mkstemp(prefix=f"level{n}-", suffix=".bin")
            with os.fdopen(fd, "wb") as fh:
                fh.write(b"".join(records))
            self._count = len(records)
            self._list = None
            with open(self._path, "rb") as fh:
                self._mm = mmap.mmap(fh.fileno(), 0, access=mmap.ACCESS_READ)

    @property
    def spilled(self) -> bool:
        return self._mm is not None

    def __len__(self) -> int:
        return self._count if self._mm is not None else len(self._list)

    def __getitem__(self, i: int) -> bytes:
        if self._mm is None:
            return self._list[i]
        if i < 0:
            i += self._count
        return self._mm[i * self.n : (i + 1) * self.n]

    def __iter__(self) -> Iterator[bytes]:
        if self._mm is None:
            return iter(self._list)
        return (self[i] for i in range(self._count))

    def __del__(self):
        if self._mm is not None:
            self._mm.close()
            os.unlink(self._path)


@dataclass(frozen=True)
class ClassLevel:
    """The members of length ``n``, lexicographically sorted."""

    n: int
    packed: _Packed = field(repr=False)

    def __len__(self) -> int:
        return len(self.packed)

    def __iter__(self) -> Iterator[Perm]:
        return (Perm._trusted(b) for b in self.packed)

    def __getitem__(self, i: int) -> Perm:
        return Perm._trusted(self.packed[i])

    @property
    def members(self) -> list[Perm]:
        return list(self)


def _pins(basis: PatternSet) -> tuple:
    return tuple((tuple(b), b.index(len(b))) for b in basis)


def _children(parent: bytes, pins: tuple) -> list[bytes]:
    n = len(parent) + 1
    top = bytes((n,))
    out = []
    for pos in range(n):
        child = parent[:pos] + top + parent[pos:]
        for needle, idx in pins:
            if len(needle) <= n and idx <= pos and len(needle) - idx - 1 <= n - 1 - pos:
                if contains_at(child, needle, idx, pos):
                    break
        else:
            out.append(child)
    return out


def extend_by_max(p: Sequence[int], basis: PatternSet = DEFAULT_BASIS) -> list[Perm]:
    """Basis-avoiding children of ``p`` obtained by inserting a new maximum."""
    return [Perm._trusted(c) for c in _children(bytes(p), _pins(basis))]


def _expand_chunk(args) -> list[bytes]:
    parents, pins = args
    out = []
    for p in parents:
        out.extend(_children(p, pins))
    return out


def _next_level(prev: _Packed, pins: tuple, workers: int) -> list[bytes]:
    if workers <= 1 or len(prev) < 5000:
        out = _expand_chunk((prev, pins))
    else:
        size = -(-len(prev) // (workers * 4))
        chunks = [[prev[j] for j in range(i, min(i + size, len(prev)))] for i in range(0, len(prev), size)]
        out = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_expand_chunk, [(c, pins) for c in chunks]):
                out.extend(part)
    out.sort()
    return out


def iter_levels(
    max_n: int,
    basis: PatternSet = DEFAULT_BASIS,
    *,
    limit: int = DEFAULT_LIMIT,
    workers: int = 1,
    spill_threshold: int = SPILL_THRESHOLD,
) -> Iterator[ClassLevel]:
    """Yield the levels 1..max_n in order; only the latest one is retained."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if max_n > limit:
        raise LimitExceeded(f"n = {max_n} exceeds the enumeration limit {limit}")
    pins = _pins(basis)
    level = _Packed(1, [b"\x01"] if avoids_all((1,), basis) else [])
    yield ClassLevel(1, level)
    for n in range(2, max_n + 1):
        level = _Packed(n, _next_level(level, pins, workers), spill_threshold)
        yield ClassLevel(n, level)


@lru_cache(maxsize=16)
def _cached_level(n: int, basis: PatternSet, limit: int) -> ClassLevel:
    if n == 1:
        return next(iter_levels(1, basis, limit=limit))
    prev = _cached_level(n - 1, basis, limit)
    return ClassLevel(n, _Packed(n, _next_level(prev.packed, _pins(basis), 1)))


def class_members(n: int, basis: PatternSet = DEFAULT_BASIS, *, limit: int = DEFAULT_LIMIT) -> ClassLevel:
    """All basis avoiders of length ``n``, sorted.  Results are memoised."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise LimitExceeded(f"n = {n} exceeds the enumeration limit {limit}")
    return _cached_level(n, basis, limit)


def class_members_by_filter(n: int, basis: PatternSet = DEFAULT_BASIS) -> list[Perm]:
    """Reference enumeration: test all n! permutations."""
    return [p for p in permutations_of(n) if avoids_all(p, basis)]


def count_class(
    max_n: int, basis: PatternSet = DEFAULT_BASIS, *, limit: int = DEFAULT_LIMIT, workers: int = 1
) -> list[tuple[int, int]]:
    return [(lvl.n, len(lvl)) for lvl in iter_levels(max_n, basis, limit=limit, workers=workers)]


def simple_members(n: int, basis: PatternSet = DEFAULT_BASIS, *, limit: int = DEFAULT_LIMIT) -> list[Perm]:
    if n < 4:
        raise ValueError("simple_members is defined for n >= 4")
    return [p for p in class_members(n, basis, limit=limit) if is_simple(p)]


def skew_decomposable_members(
    n: int, basis: PatternSet = DEFAULT_BASIS, *, limit: int = DEFAULT_LIMIT
) -> list[Perm]:
    if n < 2:
        raise ValueError("skew_decomposable_members is defined for n >= 2")
    return [p for p in class_members(n, basis, limit=limit) if is_skew_decomposable(p)]


def skew_structure_holds(p: Sequence[int]) -> bool:
    """For skew decomposable ``p = 21[a, b]`` with ``a`` skew indecomposable:
    ``a`` avoids 312 and ``b`` avoids 231."""
    d = decompose(p)
    if d.skeleton != (2, 1):
        return False
    first, rest = d.blocks
    return not contains(first, (3, 1, 2)) and not contains(rest, (2, 3, 1))


@dataclass
class CensusRecord:
    n: int
    class_count: int
    simple_count: int
    skew_dec_count: int
    sum_indec_count: int
    extreme_pattern_histogram: dict = field(default_factory=dict)

    def csv_row(self) -> str:
        return f"{self.n},{self.class_count},{self.simple_count},{self.skew_dec_count},{self.sum_indec_count}"


CENSUS_HEADER = "n,class,simple,skew_dec,sum_indec"


def census(level: ClassLevel) -> CensusRecord:
    simple = skew = sum_indec = 0
    hist: Counter = Counter()
    for p in level.packed:
        if level.n >= 4 and is_simple(p):
            simple += 1
            hist[extreme_pattern(p)] += 1
        if is_skew_decomposable(p):
            skew += 1
        if not is_sum_decomposable(p):
            sum_indec += 1
    return CensusRecord(level.n, len(level), simple, skew, sum_indec, dict(sorted(hist.items())))


# -- structural checks on the simples -------------------------------------------


@dataclass
class StructureLevel:
    n: int
    simple_count: int
    histogram: dict
    starts_with_two: int
    second_is_one: int


@dataclass
class StructureReport:
    levels: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = []
        for lv in self.levels:
            hist = " ".join(f"{''.join(map(str, k))}:{v}" for k, v in lv.histogram.items())
            out.append(
                f"n={lv.n} simples={lv.simple_count} first=2:{lv.starts_with_two} "
                f"second=1:{lv.second_is_one} extremes[{hist}]"
            )
        return out


def check_simple_structure(p: Sequence[int]) -> None:
    """Raise StructureViolation unless the simple member ``p`` satisfies the
    extreme-pattern, N/S-shape and orientation claims."""
    ext = extreme_pattern(p)
    if ext == (3, 4, 1, 2):
        raise StructureViolation("simple member with extreme pattern 3412", p)
    if ext == (2, 4, 1, 3) and not is_n_shaped(p):
        raise StructureViolation("2413-extreme simple that is not N-shaped", p)
    if ext == (3, 1, 4, 2) and not is_s_shaped(p):
        raise StructureViolation("3142-extreme simple that is not S-shaped", p)
    if (p[0] == 2) == (p[1] == 1):
        raise StructureViolation("simple member must start with 2 xor have 1 second", p)


def verify_structure(max_n: int, basis: PatternSet = DEFAULT_BASIS, *, limit: int = DEFAULT_LIMIT) -> StructureReport:
    if max_n < 4:
        raise ValueError("max_n must be >= 4")
    report = StructureReport()
    for n in range(4, max_n + 1):
        simples = simple_members(n, basis, limit=limit)
        hist: Counter = Counter()
        first_two = 0
        for p in simples:
            check_simple_structure(p)
            hist[extreme_pattern(p)] += 1
            first_two += p[0] == 2
        second_one = len(simples) - first_two
        if first_two != second_one:
            raise StructureViolation(f"n={n}: orientation halves differ ({first_two} vs {second_one})")
        report.levels.append(StructureLevel(n, len(simples), dict(sorted(hist.items())), first_two, second_one))
    return report


# -- inflation profile --------------------------------------------------------


@dataclass
class ProfileLevel:
    n: int
    observed: int
    generated: int


@dataclass
class ProfileReport:
    levels: list = field(default_factory=list)

    def lines(self) -> list[str]:
        return [f"n={lv.n} simple-skeleton members={lv.observed} generated={lv.generated}" for lv in self.levels]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def inflations_by_profile(skeleton: Sequence[int], n: int) -> set:
    """All inflations of ``skeleton`` of total length ``n`` whose blocks come
    from the per-point classes of ``allowed_block_classes``."""
    from itertools import product

    from .crenellation import allowed_block_classes

    kinds = allowed_block_classes(skeleton)
    out = set()
    for sizes in _compositions(n, len(skeleton)):
        choices = [kind.members(k) for kind, k in zip(kinds, sizes)]
        for blocks in product(*choices):
            out.add(inflate(skeleton, blocks))
    return out


def verify_inflation_profile(
    max_n: int, basis: PatternSet = DEFAULT_BASIS, *, min_n: int = 4, limit: int = DEFAULT_LIMIT
) -> ProfileReport:
    """Members with a simple skeleton of length >= 4 are exactly the
    profile-respecting inflations of simple members; checked for every
    length up to ``max_n``."""
    if max_n < 5:
        raise ValueError("max_n must be >= 5")
    report = ProfileReport()
    simples_by_len = {m: simple_members(m, basis, limit=limit) for m in range(4, max_n + 1)}
    for n in range(min_n, max_n + 1):
        observed = {p for p in class_members(n, basis, limit=limit) if len(decompose(p).skeleton) >= 4}
        generated: set = set()
        for m in range(4, n + 1):
            for s in simples_by_len[m]:
                generated |= inflations_by_profile(s, n)
        extra = generated - observed
        if extra:
            raise ProfileViolation(f"n={n}: profile inflation outside the class", min(extra))
        missing = observed - generated
        if missing:
            raise ProfileViolation(f"n={n}: member not produced by profile inflation", min(missing))
        report.levels.append(ProfileLevel(n, len(observed), len(generated)))
    return report
