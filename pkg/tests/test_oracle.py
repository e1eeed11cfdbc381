import pytest
from hypothesis import given, strategies as st

from closurebases import BoundExceededError, NotStandardError, paper_fixture, parse
from closurebases.instances import random_system
from closurebases.oracle import (
    ClosedFamily, canonical_from_family, canonical_oracle, check_bound, d_basis,
    enumerate_closed, extreme_points, is_join_semidistributive, is_standard,
    minimal_covers, quasi_critical, saturation_by_family, saturation_by_iteration,
)

seeds = st.integers(0, 10**6)
sizes = st.integers(2, 6)


def test_closed_family_of_co4():
    s = paper_fixture("Co4")
    fam = enumerate_closed(s)
    g = s.ground
    assert g.mask(list("ab")) in fam
    assert g.mask(list("ad")) not in fam and g.mask(list("ac")) not in fam
    assert fam.is_intersection_closed()


def test_standardness():
    assert is_standard(paper_fixture("A12"))
    rep = is_standard(parse("a -> b\nb -> a\n"))
    assert not rep and "a" in rep.violations


def test_bound():
    s = parse("ground: " + " ".join(f"x{i}" for i in range(16)) + "\n")
    with pytest.raises(BoundExceededError):
        enumerate_closed(s)
    check_bound(s.ground, 16)


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("CLOSUREBASES_ORACLE_BOUND", "3")
    with pytest.raises(BoundExceededError):
        enumerate_closed(paper_fixture("Co4"))


def test_critical_sets_of_2kbases():
    s = paper_fixture("2Kbases")
    cat = quasi_critical(s)
    assert s.ground.mask(list("xyzdu")) in cat.critical
    assert s.ground.full in cat.essential


@given(sizes, seeds)
def test_saturation_definitions_agree(n, seed):
    s = random_system(n, 0.8, seed)
    for x in range(s.ground.full + 1):
        assert saturation_by_family(s, x) == saturation_by_iteration(s, x)


@given(sizes, seeds)
def test_canonical_oracle_from_family(n, seed):
    s = random_system(n, 0.8, seed)
    assert canonical_from_family(enumerate_closed(s)).same_as(canonical_oracle(s))


@given(sizes, seeds)
def test_minimal_cover_readings_agree(n, seed):
    s = random_system(n, 0.8, seed)
    for x in s.ground.names:
        assert minimal_covers(s, x, "refinement") == minimal_covers(s, x, "replacement")


def test_minimal_covers_co4():
    s = paper_fixture("Co4")
    g = s.ground
    covers = [g.fmt(c) for c in minimal_covers(s, "b")]
    assert covers == ["ac", "ad"]


def test_minimal_covers_need_standard():
    with pytest.raises(NotStandardError):
        minimal_covers(parse("a -> b\nb -> a\n"), "a")


def test_d_basis_a12_binary_part_is_cover_relation():
    s = paper_fixture("A12")
    b = d_basis(s).binary
    assert {(s.ground.fmt(i.premise), s.ground.fmt(i.conclusion)) for i in b} == {
        ("2", "1"), ("3", "1"), ("5", "4"), ("6", "3")}


def test_sd_join():
    assert not is_join_semidistributive(enumerate_closed(paper_fixture("SD+fails")))
    assert is_join_semidistributive(enumerate_closed(paper_fixture("Co4")))


def test_extreme_points():
    s = paper_fixture("cover")
    g = s.ground
    assert extreme_points(s, g.mask(list("bcd"))) == g.mask(list("bc"))
    with pytest.raises(ValueError):
        extreme_points(s, g.mask(list("a")))


def test_from_sets_generates_intersections():
    fam = ClosedFamily.from_sets(paper_fixture("Co4").ground, [0b0011, 0b0110])
    assert 0b0010 in fam and 0b1111 in fam
