import pytest
from hypothesis import given, strategies as st

from closurebases import PreconditionError, canonical_basis, is_d_cycle_free, paper_fixture
from closurebases.instances import (
    FIXTURE_NAMES, SetCoverInstance, b4double, boolean_lattice, brute_force_set_cover, chain,
    double_element, lattice_from_order, random_system, setcover_binary, setcover_nonbinary,
    standard_system_from_lattice,
)
from closurebases.oracle import enumerate_closed, is_standard
from closurebases.optsearch import b_c, k_c
from helpers import compact


def test_fixtures():
    s = paper_fixture("A12")
    assert s.same_as(compact(s, "2>1 3>1 5>4 6>13 14>3 123>6 1345>6 12346>5"))
    s = paper_fixture("Co4")
    assert s.same_as(compact(s, "ac>b bd>c ad>bc"))
    s = paper_fixture("ex66")
    assert s.same_as(compact(s, "z>a ab>cz ac>bz"))
    with pytest.raises(KeyError):
        paper_fixture("nope")
    for name in FIXTURE_NAMES:
        assert is_standard(paper_fixture(name))


def test_trivial_lattices():
    assert len(standard_system_from_lattice(chain(2))) == 0
    assert standard_system_from_lattice(chain(2)).ground.n == 1
    assert len(standard_system_from_lattice(boolean_lattice("abc"))) == 0


def test_round_trip_2kbases_lattice():
    s = paper_fixture("2Kbases")
    back = standard_system_from_lattice(enumerate_closed(s))
    assert back.ground == s.ground and back.same_as(canonical_basis(s))


def test_doubling_chain_bottom():
    lat = double_element(chain(2), 0, "z")
    assert len(lat) == 3
    assert standard_system_from_lattice(lat).ground.n == 2


def test_doubling_b4():
    lat = double_element(boolean_lattice(["q1", "q2", "q3", "q4"]), 0b0011, "z")
    s = standard_system_from_lattice(lat)
    assert s.closure_of(["z"]) == s.ground.mask(["z", "q1", "q2"])
    assert is_standard(s)


def test_b4double():
    b4 = b4double()
    s = b4.sigma
    assert s.ground.names == ("q1", "q2", "q3", "q4", "z", "w")
    assert canonical_basis(s).lookup(b4.reduction.target) is not None
    assert s.closure(b4.reduction.target) == s.ground.full


def test_lattice_from_order():
    # the pentagon N5: 0 < a < b < 1, 0 < c < 1
    order = {("0", x) for x in "0abc1"} | {("a", "b"), ("a", "1"), ("b", "1"), ("c", "1")}
    order |= {(x, x) for x in "abc1"}
    lat = lattice_from_order(list("0abc1"), lambda x, y: (x, y) in order)
    assert lat.ground.names == ("a", "b", "c")
    assert len(lat) == 5


def test_set_cover_instance():
    inst = SetCoverInstance.parse("q1 q2 q3 q4\nq1\nq2\nq3\nq4\nq1 q2\n")
    assert not inst.is_trivial
    assert len(brute_force_set_cover(inst)) == 3
    assert SetCoverInstance.from_names("abc", [["a", "b"], ["c"]]).is_trivial
    with pytest.raises(ValueError):
        SetCoverInstance.from_names("abc", [["a"]])
    with pytest.raises(PreconditionError):
        setcover_nonbinary(SetCoverInstance.from_names("abc", [["a", "b"], ["c"]]))


def test_singleton_family():
    inst = SetCoverInstance.from_names("abcd", [["a"], ["b"], ["c"], ["d"]])
    red = setcover_nonbinary(inst)
    assert k_c(red.sigma, red.target)[0] == 4
    assert b_c(setcover_binary(inst).sigma, "w")[0] == 4


@st.composite
def instances(draw):
    nq = draw(st.integers(3, 5))
    names = [f"q{i}" for i in range(nq)]
    fam = draw(st.lists(st.lists(st.sampled_from(names), min_size=1, max_size=nq - 2,
                                 unique=True), min_size=1, max_size=6))
    fam += [[q] for q in names if not any(q in s for s in fam)]
    return SetCoverInstance.from_names(names, fam)


@given(instances())
def test_reductions(inst):
    opt = len(brute_force_set_cover(inst))
    nb, b = setcover_nonbinary(inst), setcover_binary(inst)
    assert is_d_cycle_free(nb.sigma) and is_d_cycle_free(b.sigma)
    assert k_c(nb.sigma, nb.target)[0] == opt
    assert b_c(b.sigma, "w")[0] == opt


def test_random_system():
    assert random_system(4, 0.5, 1).same_as(random_system(4, 0.5, 1))
    assert len(random_system(5, 0.0, 3)) == 0
    assert all(is_standard(random_system(6, 1.0, k)) for k in range(20))
