import pytest
from hypothesis import given, strategies as st

from closurebases import (
    NotStandardError, canonical_basis, equivalent, format_set, is_regular, is_uc_system,
    metrics, paper_fixture, parse, regularize, saturation,
)
from closurebases.canonical import canonical_from_closure, critical_sets
from closurebases.core import aggregation, unit_expansion
from closurebases.instances import random_system
from closurebases.oracle import canonical_oracle, saturation_oracle
from helpers import compact, m

seeds = st.integers(0, 10**6)
sizes = st.integers(1, 7)
densities = st.sampled_from([0.3, 0.6, 1.0, 1.4])


def test_2kbases_canonical_size():
    assert metrics(canonical_basis(paper_fixture("2Kbases"))).s == 24


def test_canonical_of_k_basis_recovers_sigma_c():
    s = paper_fixture("2Kbases")
    k = compact(s, "y>u z>u d>z e>d yd>e xu>y zy>x")
    assert canonical_basis(k).same_as(canonical_basis(s))


def test_empty_system():
    s = parse("ground: a b\n")
    assert len(canonical_basis(s)) == 0


@given(sizes, densities, seeds)
def test_day_matches_oracle_and_nextclosure(n, d, seed):
    s = random_system(n, d, seed)
    c = canonical_basis(s)
    assert c.implications == canonical_oracle(s).implications
    assert canonical_from_closure(s.ground, s.closure).implications == c.implications
    assert equivalent(c, s)
    assert canonical_basis(c).same_as(c)
    assert canonical_basis(unit_expansion(s)).same_as(c)


@given(sizes, densities, seeds)
def test_saturation_matches_oracle(n, d, seed):
    s = random_system(n, d, seed)
    for x in range(s.ground.full + 1):
        assert saturation(s, x) == saturation_oracle(s, x)


def test_saturation_example():
    s = paper_fixture("B4double")
    assert saturation(s, m(s, "") | s.ground.mask(["z", "q3", "q4"])) == s.ground.mask(
        ["q1", "q2", "q3", "q4", "z"])


def test_regularize_published_example():
    s = paper_fixture("reg-example")
    r = regularize(s)
    assert r.same_as(compact(s, "a>bc bc>d"))
    assert (metrics(r).count, metrics(r).sL, metrics(r).sR) == (2, 3, 3)


def test_regular_inputs_unchanged():
    for name in ("2Kbases", "A12", "EO", "ex66"):
        c = canonical_basis(paper_fixture(name))
        assert is_regular(c)
        assert regularize(c).same_as(c)


def test_regularize_requires_standard():
    with pytest.raises(NotStandardError):
        regularize(parse("a -> b\nb -> a\n"))


@given(sizes, densities, seeds)
def test_regularize_never_grows(n, d, seed):
    s = random_system(n, d, seed)
    a, r = aggregation(s), regularize(s)
    assert is_regular(r) and equivalent(r, s)
    ma, mr = metrics(a), metrics(r)
    assert mr.count <= ma.count and mr.sL <= ma.sL and mr.sR <= ma.sR


def test_uc():
    assert not is_uc_system(paper_fixture("ex66"))
    assert is_uc_system(paper_fixture("Co4"))
    assert is_uc_system(paper_fixture("EO"))


def test_critical_sets_sorted():
    s = paper_fixture("A12")
    assert [s.ground.fmt(c) for c in critical_sets(s)][:4] == ["2", "3", "5", "6"]


def test_format():
    assert format_set(canonical_basis(paper_fixture("Co4"))) == "{ac→b, ad→bc, bd→c}"
