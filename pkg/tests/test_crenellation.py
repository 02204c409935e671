from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permclass.classgen import simple_members
from permclass.crenellation import (
    DFA_TABLE,
    RULES,
    BadAlphabet,
    BlockClass,
    InvalidWord,
    NotApplicable,
    NotEncodable,
    allowed_block_classes,
    decode,
    decode_labeled,
    dfa_accepts,
    encode,
    is_valid_word,
    letter_block_classes,
    simples_via_words,
    template_points,
    word_violations,
    words_of_length,
)
from permclass.perm import avoids_all, inverse, is_simple, parse_perm, pattern_of

from oracles import contains_brute

P = parse_perm

A312, A231, DEC = BlockClass.AV312, BlockClass.AV231, BlockClass.DECREASING


@pytest.mark.parametrize("w, ok", [("dddd", True), ("ddcdd", False), ("ddbadd", True), ("ddadd", False), ("ddd", False), ("ddbbdd", False), ("dddadd", False)])
def test_is_valid_word(w, ok):
    assert is_valid_word(w) == ok


def test_violation_messages():
    assert word_violations("ddcdd") == [RULES["edges"]]
    assert RULES["da"] in word_violations("dddadd")
    assert RULES["ends"] in word_violations("dbdd")
    with pytest.raises(BadAlphabet):
        is_valid_word("ddxdd")


def test_dfa_table_as_printed():
    missing_a = {s for s, row in DFA_TABLE.items() if "a" not in row}
    assert missing_a == {"I", "A", "CD", "D", "DD"}
    assert DFA_TABLE["C"]["d"] == "CD"
    assert "b" not in DFA_TABLE["B"] and "c" not in DFA_TABLE["C"]
    assert DFA_TABLE["D"]["d"] == "DD" and DFA_TABLE["DD"]["d"] == "DD"


@pytest.mark.parametrize("u, ok", [("dd", True), ("cdd", False), ("bdd", True), ("", False), ("add", False)])
def test_dfa_accepts(u, ok):
    assert dfa_accepts(u) == ok


def test_rules_match_dfa_up_to_eight():
    # the full sweep to length 12 lives in the acceptance suite
    for length in range(9):
        for t in product("abcd", repeat=length):
            w = "".join(t)
            assert is_valid_word(w) == (w.startswith("dd") and dfa_accepts(w[2:])), w


def test_words_of_length():
    assert words_of_length(4) == ["dddd"]
    assert words_of_length(5) == ["ddbdd", "ddddd"]
    assert len(words_of_length(6)) == 7
    assert words_of_length(3) == []


@pytest.mark.parametrize("n", range(4, 15))
def test_word_counts_formula(n):
    assert len(words_of_length(n)) == (3 ** (n - 3) + (-1) ** n) // 4


@pytest.mark.parametrize("n", range(4, 10))
def test_words_are_exactly_the_valid_strings(n):
    brute = ["".join(t) for t in product("abcd", repeat=n) if is_valid_word("".join(t))]
    assert words_of_length(n) == brute


def test_decode_examples():
    assert decode("dddd") == P("2413")
    assert decode("ddbdd") == P("25314")
    assert decode("ddddd") == P("24153")
    with pytest.raises(InvalidWord) as info:
        decode("ddcdd")
    assert RULES["edges"] in info.value.violations


def is_increasing_oscillation(p):
    """Starts with 2 and its inversion graph is a path."""
    n = len(p)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if p[i] > p[j]]
    degree = [0] * n
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    if len(edges) != n - 1 or max(degree) > 2:
        return False
    seen, todo = {0}, [0]
    while todo:
        v = todo.pop()
        for i, j in edges:
            for a, b in ((i, j), (j, i)):
                if a == v and b not in seen:
                    seen.add(b)
                    todo.append(b)
    return len(seen) == n and p[0] == 2


def test_oscillation_oracle():
    assert is_increasing_oscillation((2, 4, 1, 5, 3))
    assert is_increasing_oscillation((2, 4, 1, 6, 3, 5))
    assert not is_increasing_oscillation((2, 5, 3, 1, 4))


def test_all_d_words_are_increasing_oscillations():
    assert decode("dddddd") == P("241635")
    for n in range(4, 14):
        assert is_increasing_oscillation(decode("d" * n))


def test_template_coordinates_distinct():
    for n in range(4, 10):
        for w in words_of_length(n):
            pts = template_points(w)
            assert len({p.x for p in pts}) == len(pts) == len({p.y for p in pts})


@pytest.mark.parametrize("n", range(4, 10))
def test_decoded_words_are_simple_members(n):
    outs = []
    for w in words_of_length(n):
        p, pts = decode_labeled(w)
        assert is_simple(p) and p[0] == 2 and p[1] != 1
        assert avoids_all(p)
        # the d points alone form an increasing oscillation
        ds = [v for v, pt in zip(p, pts) if pt.letter == "d"]
        assert is_increasing_oscillation(pattern_of(ds))
        outs.append(p)
    assert len(set(outs)) == len(outs)


def _place(w):
    pts = sorted(template_points(w, validate=False), key=lambda q: q.x)
    return pattern_of([q.y for q in pts])


def test_forbidden_factors_create_intervals():
    from permclass.perm import IntervalSpan, proper_intervals

    # a leading 'dda' makes the first two points an interval, a trailing 'cdd' the last two
    assert IntervalSpan(1, 2) in proper_intervals(_place("ddabdd"))
    assert IntervalSpan(5, 2) in proper_intervals(_place("ddbcdd"))
    # 'c' closing a block followed by 'a' opening the next one
    assert not is_simple(_place("ddbcdabdd"))
    # repeated letters sit on one segment next to each other
    assert not is_simple(_place("ddbbdd"))
    with pytest.raises(InvalidWord):
        template_points("ddabdd")


def test_encode_examples():
    assert encode(P("2413")) == "dddd"
    assert encode(P("25314")) == "ddbdd"
    with pytest.raises(NotEncodable) as info:
        encode(P("3142"))
    assert "orientation" in info.value.reason
    assert encode(inverse(P("3142"))) == "dddd"


@pytest.mark.parametrize("perm, reason", [("123", "length"), ("2143", "not simple"), ("35142", "not in the class"), ("351624", "not in the class")])
def test_encode_rejections(perm, reason):
    p = P(perm)
    if reason == "not in the class":
        assert is_simple(p) and not avoids_all(p)
    with pytest.raises(NotEncodable) as info:
        encode(p)
    assert reason in info.value.reason


@pytest.mark.parametrize("n", range(4, 10))
def test_round_trips(n):
    for w in words_of_length(n):
        assert encode(decode(w)) == w
    for p in simple_members(n):
        if p[1] != 1:
            assert decode(encode(p)) == p


@given(st.integers(4, 11).flatmap(lambda n: st.sampled_from(words_of_length(n))))
def test_round_trip_property(w):
    assert encode(decode(w)) == w


def test_simples_via_words_small():
    assert simples_via_words(4) == [P("2413"), P("3142")]
    assert simples_via_words(5) == [P("24153"), P("25314"), P("31524"), P("41352")]


@pytest.mark.parametrize("n", range(4, 9))
def test_simples_via_words_match_brute_force(n):
    assert simples_via_words(n) == simple_members(n)


def test_allowed_block_classes_examples():
    assert allowed_block_classes(P("2413")) == (A312, A312, A231, A231)
    assert allowed_block_classes(P("25314")) == (A312, A312, DEC, A231, A231)
    with pytest.raises(NotApplicable):
        allowed_block_classes(P("123"))
    with pytest.raises(NotApplicable):
        allowed_block_classes(P("35142"))


def test_block_rule_is_necessary():
    # a 312 block at a point with a smaller point to its right, or a 231 block
    # at a point with a larger point to its left, yields 4231
    from permclass.perm import inflate

    for s in simple_members(6):
        for i, kind in enumerate(allowed_block_classes(s)):
            for bad in ((3, 1, 2), (2, 3, 1), (1, 2)):
                if kind.admits(bad):
                    continue
                blocks = [(1,)] * len(s)
                blocks[i] = bad
                assert contains_brute(inflate(s, blocks), (4, 2, 3, 1))


def test_block_class_members():
    assert BlockClass.DECREASING.members(3) == ((3, 2, 1),)
    assert len(BlockClass.AV231.members(4)) == 14
    assert len(BlockClass.AV312.members(4)) == 14
    assert (2, 3, 1) not in BlockClass.AV231.members(3)
    assert (3, 1, 2) not in BlockClass.AV312.members(3)


@pytest.mark.parametrize("n", range(4, 10))
def test_letter_rule_matches_geometry(n):
    for w in words_of_length(n):
        assert letter_block_classes(w) == allowed_block_classes(decode(w))


def test_letter_rule_d_alternation():
    classes = letter_block_classes("dddddd")
    _, pts = decode_labeled("dddddd")
    by_order = {pt.index: c for pt, c in zip(pts, classes)}
    assert [by_order[k] for k in range(1, 7)] == [A312, A231] * 3
