import pytest

from permclass import classgen
from permclass.classgen import (
    LimitExceeded,
    ProfileViolation,
    StructureViolation,
    census,
    check_simple_structure,
    class_members,
    class_members_by_filter,
    count_class,
    extend_by_max,
    inflations_by_profile,
    iter_levels,
    simple_members,
    skew_decomposable_members,
    skew_structure_holds,
    verify_inflation_profile,
    verify_structure,
)
from permclass.perm import DEFAULT_BASIS, PatternSet, avoids_all, contains, decompose, inverse, parse_perm, reverse_complement

from oracles import all_perms, contains_brute

P = parse_perm


def test_extend_by_max():
    assert sorted(extend_by_max(P("1"))) == [P("12"), P("21")]
    assert sorted(extend_by_max(P("231"))) == [P("2314"), P("2341"), P("2431")]


@pytest.mark.parametrize("n", range(1, 8))
def test_extension_pin_matches_full_check(n):
    # pinned test through the new maximum == full avoidance on every child
    for parent in class_members(n):
        got = set(extend_by_max(parent))
        for pos in range(n + 1):
            child = parent[:pos] + (n + 1,) + parent[pos:]
            assert (child in got) == avoids_all(child)


def test_class_members_small():
    assert len(class_members(3)) == 6
    assert len(class_members(5)) == 101
    level = class_members(5)
    assert level.members == sorted(level.members)


def test_level_five_excludes_exactly_two():
    av4231 = [p for p in all_perms(5) if not contains_brute(p, (4, 2, 3, 1))]
    assert len(av4231) == 103
    assert sorted(set(av4231) - set(class_members(5))) == [(3, 5, 1, 4, 2), (4, 2, 5, 1, 3)]


def test_count_six_by_inclusion_exclusion():
    av4231 = [p for p in all_perms(6) if not contains_brute(p, (4, 2, 3, 1))]
    others = [b for b in DEFAULT_BASIS if len(b) > 4]
    bad = [p for p in av4231 if any(contains_brute(p, b) for b in others)]
    assert (len(av4231), len(bad)) == (513, 36)
    assert dict(count_class(6))[6] == 477


@pytest.mark.parametrize("n", range(1, 9))
def test_levels_match_filter(n):
    assert class_members(n).members == class_members_by_filter(n)


@pytest.mark.parametrize("n", range(2, 8))
def test_downward_closure(n):
    below = set(class_members(n - 1))
    for p in class_members(n):
        for i in range(n):
            rest = p[:i] + p[i + 1 :]
            assert tuple(v - (v > p[i]) for v in rest) in below


def test_count_class_short():
    assert count_class(1) == [(1, 1)]
    assert count_class(8) == [(1, 1), (2, 2), (3, 6), (4, 23), (5, 101), (6, 477), (7, 2343), (8, 11762)]


def test_limits():
    with pytest.raises(LimitExceeded):
        class_members(12)
    with pytest.raises(LimitExceeded):
        count_class(5, limit=4)


def test_workers_do_not_change_output():
    serial = [lvl.members for lvl in iter_levels(7)]
    parallel = [lvl.members for lvl in iter_levels(7, workers=2)]
    assert serial == parallel


def test_spilled_levels_match():
    plain = [lvl.members for lvl in iter_levels(7)]
    spilled_levels = list(iter_levels(7, spill_threshold=100))
    assert spilled_levels[-1].packed.spilled
    assert [lvl.members for lvl in spilled_levels] == plain
    assert spilled_levels[-1][0] == plain[-1][0]


def test_other_basis():
    # Av(231) is counted by the Catalan numbers
    assert [c for _, c in count_class(7, PatternSet([(2, 3, 1)]))] == [1, 2, 5, 14, 42, 132, 429]


def test_simple_members_small():
    assert simple_members(4) == [P("2413"), P("3142")]
    assert simple_members(5) == [P("24153"), P("25314"), P("31524"), P("41352")]


@pytest.mark.parametrize("n", range(4, 9))
def test_simples_closed_under_symmetries(n):
    s = set(simple_members(n))
    assert {inverse(p) for p in s} == s
    assert {reverse_complement(p) for p in s} == s


def test_verify_structure():
    report = verify_structure(8)
    n6 = report.levels[2]
    assert n6.n == 6 and set(n6.histogram) == {P("2143"), P("2413"), P("3142")}
    assert [(lv.starts_with_two, lv.second_is_one) for lv in report.levels] == [(1, 1), (2, 2), (7, 7), (20, 20), (61, 61)]


def test_structure_violation_carries_witness():
    with pytest.raises(StructureViolation) as info:
        check_simple_structure(P("3412"))
    assert info.value.witness == P("3412")
    with pytest.raises(StructureViolation):
        check_simple_structure(P("243615"))  # 2413-extreme, not N-shaped


def test_skew_decomposables():
    assert skew_decomposable_members(2) == [P("21")]
    assert skew_decomposable_members(3) == [P("231"), P("312"), P("321")]
    assert len(skew_decomposable_members(4)) == 10
    for n in range(2, 8):
        for p in skew_decomposable_members(n):
            assert skew_structure_holds(p)
        # conversely every permutation with that structure is a member
        for p in all_perms(n):
            if skew_structure_holds(p):
                assert avoids_all(p)


def test_skew_indecomposable_av312_counts():
    counts = []
    for n in range(1, 5):
        counts.append(sum(1 for p in all_perms(n) if not contains_brute(p, (3, 1, 2)) and decompose(p).skeleton != (2, 1)))
    assert counts == [1, 1, 3, 9]


def test_census_six():
    rec = census(class_members(6))
    assert (rec.class_count, rec.simple_count, rec.skew_dec_count) == (477, 14, 117)
    assert sum(rec.extreme_pattern_histogram.values()) == rec.simple_count
    assert rec.csv_row() == f"6,477,14,117,{rec.sum_indec_count}"
    assert classgen.CENSUS_HEADER == "n,class,simple,skew_dec,sum_indec"


def test_single_block_inflations():
    def single_big(s):
        out = set()
        for q in inflations_by_profile(s, len(s) + 1):
            d = decompose(q)
            if d.skeleton == s:
                out.add(q)
        return out

    got = single_big(P("25314"))
    assert len(got) == 9
    assert P("264315") in got and P("263415") not in got
    assert contains(P("263415"), (4, 2, 3, 1))
    got = single_big(P("24153"))
    assert len(got) == 10 and all(avoids_all(q) for q in got)
    assert not avoids_all(P("423615"))


def test_verify_inflation_profile():
    report = verify_inflation_profile(7)
    assert [lv.observed for lv in report.levels] == [2, 20, 140, 852]


def test_profile_violation_detects_wrong_rule(monkeypatch):
    # swapping in the literal "b-points inflate to increasing sequences" rule
    # must be rejected
    from permclass import crenellation

    real = crenellation.allowed_block_classes

    class Increasing:
        @staticmethod
        def members(k):
            return (tuple(range(1, k + 1)),)

    def literal(p):
        return tuple(Increasing if c is crenellation.BlockClass.DECREASING else c for c in real(p))

    monkeypatch.setattr(crenellation, "allowed_block_classes", literal)
    with pytest.raises(ProfileViolation) as info:
        verify_inflation_profile(6)
    assert info.value.witness is not None
