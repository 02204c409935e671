"""Word codec for the simple permutations of Av(4231, 35142, 42513, 351624).

A simple member whose second entry is not 1 is described by a word over
``abcd``.  Each ``d`` is an isolated point of the staircase; between two
consecutive ``d``s sits a block of points, read bottom-to-top for
N-shaped blocks and left-to-right for S-shaped ones, with ``a``/``b``/``c``
saying which of the block's three line segments a point lies on.  The
other half of the simples are the inverses of these.

Decoding places every point at exact rational coordinates on a fixed
template and reads off the pattern.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .perm import DEFAULT_BASIS, Perm, avoids_all, contains, inverse, is_simple, pattern_of

ALPHABET = "abcd"


class WordError(ValueError):
    pass


class BadAlphabet(WordError):
    pass


class InvalidWord(WordError):
    def __init__(self, word: str, violations: list[str]):
        super().__init__(f"invalid word {word!r}: " + "; ".join(violations))
        self.word = word
        self.violations = violations


class NotEncodable(ValueError):
    def __init__(self, perm: Sequence[int], reason: str):
        super().__init__(f"{Perm(perm)} cannot be encoded: {reason}")
        self.perm = Perm(perm)
        self.reason = reason


class NotApplicable(ValueError):
    pass


# -- the word language --------------------------------------------------------

RULES = {
    "ends": "must begin and end with 'dd'",
    "repeat": "must not contain 'aa', 'bb' or 'cc'",
    "edges": "must not begin 'dda' or end 'cdd'",
    "da": "must not contain the factor 'da'",
    "length": "must have length at least 4",
}


def _check_alphabet(w: str) -> None:
    bad = set(w) - set(ALPHABET)
    if bad:
        raise BadAlphabet(f"letters {''.join(sorted(bad))!r} are not in {ALPHABET!r}")


def word_violations(w: str) -> list[str]:
    """Messages for every word rule that ``w`` breaks (empty if valid)."""
    _check_alphabet(w)
    out = []
    if not (w.startswith("dd") and w.endswith("dd")):
        out.append(RULES["ends"])
    if "aa" in w or "bb" in w or "cc" in w:
        out.append(RULES["repeat"])
    if w.startswith("dda") or w.endswith("cdd"):
        out.append(RULES["edges"])
    if "da" in w:
        out.append(RULES["da"])
    if len(w) < 4:
        out.append(RULES["length"])
    return out


def is_valid_word(w: str) -> bool:
    return not word_violations(w)


# State I stands for "the opening dd has just been read"; the automaton
# therefore runs on a word with its first two letters removed.
DFA_START = "I"
DFA_ACCEPT = frozenset({"DD"})
DFA_TABLE: dict[str, dict[str, str]] = {
    "I": {"b": "B", "c": "C", "d": "D"},
    "A": {"b": "B", "c": "C", "d": "D"},
    "B": {"a": "A", "c": "C", "d": "D"},
    "C": {"a": "A", "b": "B", "d": "CD"},
    "CD": {"b": "B", "c": "C", "d": "D"},
    "D": {"b": "B", "c": "C", "d": "DD"},
    "DD": {"b": "B", "c": "C", "d": "DD"},
}
DFA_STATES = tuple(DFA_TABLE)


def dfa_run(u: str) -> str | None:
    """Final state after reading ``u`` from the start state, or None if stuck."""
    state = DFA_START
    for ch in u:
        state = DFA_TABLE[state].get(ch)
        if state is None:
            return None
    return state


def dfa_accepts(u: str) -> bool:
    return dfa_run(u) in DFA_ACCEPT


def words_of_length(n: int) -> list[str]:
    """All valid words of length ``n``, in lexicographic order."""
    if n < 4:
        return []
    out: list[str] = []

    def walk(state: str, prefix: str, left: int) -> None:
        if left == 0:
            if state in DFA_ACCEPT:
                out.append("dd" + prefix)
            return
        for ch, nxt in sorted(DFA_TABLE[state].items()):
            walk(nxt, prefix + ch, left - 1)

    walk(DFA_START, "", n - 2)
    return out


# -- geometric template -------------------------------------------------------


@dataclass(frozen=True)
class TemplatePoint:
    x: Fraction
    y: Fraction
    letter: str
    index: int  # d: 1-based order among the d letters; a/b/c: block number (0-based)
    shape: str = ""  # "N" or "S" for block points

    @property
    def label(self) -> str:
        if self.letter == "d":
            return f"d{self.index}"
        return f"{self.letter}{self.index}{self.shape}"


def _split_word(w: str) -> list[str]:
    """Block factors f0, f1, ... of ``w = dd f0 d f1 d ... d``."""
    return w[2:].split("d")[:-1]


def template_points(w: str, validate: bool = True) -> list[TemplatePoint]:
    """Place every letter of a word on the crenellation template.

    With ``validate=False`` any word of the form ``dd ... d`` is placed, which
    is how the forbidden patterns can be seen to produce intervals.
    """
    violations = word_violations(w)
    if violations and (validate or not (w.startswith("dd") and w.endswith("d"))):
        raise InvalidWord(w, violations)
    F = Fraction
    pts = [TemplatePoint(F(-30), F(-10), "d", 1), TemplatePoint(F(20), F(-20), "d", 2)]
    for j, factor in enumerate(_split_word(w)):
        k, odd = divmod(j, 2)
        t = len(factor)
        base = 40 * k
        for i, letter in enumerate(factor, 1):
            step = F(10 * i, t + 1)
            band = "abc".index(letter)
            # position along the band: rising for a and c, falling for b
            along = 10 - step if letter == "b" else step
            if not odd:
                x = base + 10 * band + along
                y = base + step
                pts.append(TemplatePoint(x, y, letter, j, "N"))
            else:
                x = base + 30 + step
                y = base + 10 + 10 * band + along
                pts.append(TemplatePoint(x, y, letter, j, "S"))
        if not odd:
            pts.append(TemplatePoint(F(base + 10), F(base + 30), "d", j + 3))
        else:
            pts.append(TemplatePoint(F(base + 60), F(base + 20), "d", j + 3))
    return pts


def decode_labeled(w: str) -> tuple[Perm, tuple[TemplatePoint, ...]]:
    """The decoded permutation and the template point behind each position."""
    pts = sorted(template_points(w), key=lambda p: p.x)
    return pattern_of([p.y for p in pts]), tuple(pts)


def decode(w: str) -> Perm:
    return decode_labeled(w)[0]


@lru_cache(maxsize=32)
def _encoding_table(n: int) -> dict:
    return {decode(w): w for w in words_of_length(n)}


def encode(p: Sequence[int]) -> str:
    """The word decoding to ``p``.

    Raises NotEncodable for short, non-simple, non-member, or ``p(2) = 1``
    input (in the last case ``inverse(p)`` is encodable).
    """
    p = Perm(p)
    if len(p) < 4:
        raise NotEncodable(p, "length must be at least 4")
    if not is_simple(p):
        raise NotEncodable(p, "not simple")
    if not avoids_all(p, DEFAULT_BASIS):
        raise NotEncodable(p, "not in the class")
    if p[1] == 1:
        raise NotEncodable(p, "wrong orientation: second entry is 1 (encode the inverse)")
    try:
        return _encoding_table(len(p))[p]
    except KeyError:
        raise NotEncodable(p, "no word decodes to it") from None


def simples_via_words(n: int) -> list[Perm]:
    """Decoded words of length ``n`` together with their inverses, sorted."""
    if n < 4:
        raise ValueError("n must be >= 4")
    decoded = [decode(w) for w in words_of_length(n)]
    return sorted(decoded + [inverse(p) for p in decoded])


# -- inflation classes per point ----------------------------------------------


class BlockClass(enum.Enum):
    DECREASING = "Av(12)"
    AV231 = "Av(231)"
    AV312 = "Av(312)"

    def members(self, k: int) -> tuple:
        return _block_members(self, k)

    def admits(self, block: Sequence[int]) -> bool:
        if self is BlockClass.DECREASING:
            return not contains(block, (1, 2))
        return not contains(block, (2, 3, 1) if self is BlockClass.AV231 else (3, 1, 2))


@lru_cache(maxsize=None)
def _block_members(kind: BlockClass, k: int) -> tuple:
    if kind is BlockClass.DECREASING:
        return (Perm._trusted(range(k, 0, -1)),)
    return tuple(Perm._trusted(q) for q in permutations(range(1, k + 1)) if kind.admits(q))


def allowed_block_classes(p: Sequence[int]) -> tuple[BlockClass, ...]:
    """Per point: which class its inflating block must come from.

    A larger point to the left forbids 231 in the block, a smaller point to
    the right forbids 312 (either would complete a 4231); both together
    leave only decreasing blocks.
    """
    if len(p) < 4 or not is_simple(p) or not avoids_all(p, DEFAULT_BASIS):
        raise NotApplicable(f"{Perm(p)} is not a simple member of length >= 4")
    out = []
    running_max = 0
    suffix_min = [0] * len(p)
    lo = len(p) + 1
    for i in range(len(p) - 1, -1, -1):
        suffix_min[i] = lo
        lo = min(lo, p[i])
    for i, v in enumerate(p):
        before = running_max > v
        after = suffix_min[i] < v
        running_max = max(running_max, v)
        if before and after:
            out.append(BlockClass.DECREASING)
        elif before:
            out.append(BlockClass.AV231)
        elif after:
            out.append(BlockClass.AV312)
        else:
            raise AssertionError(f"point {v} of simple {Perm(p)} has no left-larger or right-smaller point")
    return tuple(out)


_LETTER_RULE = {
    ("a", "N"): BlockClass.AV312,
    ("c", "N"): BlockClass.AV231,
    ("a", "S"): BlockClass.AV231,
    ("c", "S"): BlockClass.AV312,
}


def letter_block_classes(w: str) -> tuple[BlockClass, ...]:
    """Block classes of ``decode(w)`` read off the letters: d-points alternate
    Av(312)/Av(231) in word order, b-points are decreasing, and a/c points
    depend on the block shape."""
    _, pts = decode_labeled(w)
    out = []
    for pt in pts:
        if pt.letter == "d":
            out.append(BlockClass.AV312 if pt.index % 2 else BlockClass.AV231)
        elif pt.letter == "b":
            out.append(BlockClass.DECREASING)
        else:
            out.append(_LETTER_RULE[pt.letter, pt.shape])
    return tuple(out)
