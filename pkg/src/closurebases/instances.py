"""Fixtures and generators: published examples, lattices, doubling,
set-cover reductions and random standard systems."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .canonical import canonical_from_closure
from .core import AttrSet, GroundSet, Implication, ImplicationSet, bits, is_subset, popcount
from .errors import PreconditionError
from .oracle import ClosedFamily, is_standard

# A finite lattice is handled as the closed-set family that represents it.
FiniteLattice = ClosedFamily


def _compact(ground: GroundSet, spec: str) -> ImplicationSet:
    """``"z>a ab>cz"``: single-character attribute names, no separators."""
    imps = []
    for item in spec.split():
        left, right = item.split(">")
        imps.append(Implication(ground.mask(list(left)), ground.mask(list(right))))
    return ImplicationSet(ground, tuple(imps))


_COMPACT_FIXTURES = {
    # canonical basis of the six-element lattice with two K-bases
    "2Kbases": ("xyzedu", "y>u z>u d>zu e>dzu xyzdu>e xu>y zyu>x"),
    "A12": ("123456", "2>1 3>1 5>4 6>13 14>3 123>6 1345>6 12346>5"),
    "Co4": ("abcd", "ac>b bd>c ad>bc"),
    "cover": ("abcdy", "a>bcd bcdy>a bc>d"),
    "EO": ("abcd", "d>cb c>b ab>dc"),
    "SD+fails": ("abcd", "ac>b bd>c"),
    "ex66": ("abcz", "z>a ab>cz ac>bz"),
    "reg-example": ("abcd", "a>b ab>c bc>d"),
    "ex2345": ("2345", "2>5 45>23 35>2"),
}

FIXTURE_NAMES = tuple(sorted(list(_COMPACT_FIXTURES) + ["B4double"]))


def paper_fixture(name: str) -> ImplicationSet:
    """A published example, as printed (``B4double`` is built by doubling)."""
    if name == "B4double":
        return b4double().sigma
    try:
        names, spec = _COMPACT_FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None
    return _compact(GroundSet(tuple(names)), spec)


# lattices ---------------------------------------------------------------

def boolean_lattice(names: Sequence[str]) -> FiniteLattice:
    g = GroundSet(tuple(names))
    return ClosedFamily(g, tuple(range(1 << g.n)))


def chain(n: int) -> FiniteLattice:
    """Chain with ``n`` elements over attributes c1..c(n-1)."""
    g = GroundSet(tuple(f"c{i}" for i in range(1, n)))
    return ClosedFamily(g, tuple((1 << i) - 1 for i in range(n)))


def lattice_from_order(elements: Sequence, leq: Callable[[object, object], bool]) -> FiniteLattice:
    """Closed-family form of an abstract finite lattice: each element maps to
    the set of join-irreducibles below it."""
    elems = list(elements)
    lower = {e: [d for d in elems if d != e and leq(d, e)] for e in elems}
    covers = {e: [d for d in lower[e] if not any(f != d and leq(d, f) for f in lower[e])]
              for e in elems}
    ji = [e for e in elems if len(covers[e]) == 1]
    g = GroundSet(tuple(str(j) for j in ji))
    sets = [sum(1 << k for k, j in enumerate(ji) if leq(j, e)) for e in elems]
    fam = ClosedFamily(g, tuple(sets))
    if len(fam) != len(elems) or not fam.is_intersection_closed():
        raise ValueError("the order is not a lattice")
    return fam


def double_element(lat: FiniteLattice, b: AttrSet, name: str = "z") -> FiniteLattice:
    """Replace the element ``b`` by a two-element interval ``[b, b∪{name}]``.

    Members strictly above ``b`` gain the new attribute; the new attribute is
    join-irreducible in the result.
    """
    if b not in lat:
        raise ValueError("can only double a member of the family")
    if name in lat.ground.index:
        raise ValueError(f"attribute {name!r} already present")
    g = GroundSet(lat.ground.names + (name,))
    z = 1 << lat.ground.n
    sets = []
    for x in lat.closed:
        if x == b:
            sets.extend((x, x | z))
        elif is_subset(b, x):
            sets.append(x | z)
        else:
            sets.append(x)
    return ClosedFamily(g, tuple(sets))


def _ji_source(lat: FiniteLattice, j: AttrSet) -> int | None:
    for a in bits(j):
        if lat.closure(1 << a) == j:
            return a
    return None


def standard_system_from_lattice(lat: FiniteLattice) -> ImplicationSet:
    """Canonical basis of the standard system on the join-irreducibles:
    φ(X) = {j : j ≤ ∨X}.

    A join-irreducible generated by a single attribute keeps that name and
    its position; the rest are called j0, j1, ... and come last.
    """
    keyed = []
    for k, j in enumerate(lat.join_irreducibles):
        a = _ji_source(lat, j)
        keyed.append(((0, a) if a is not None else (1, k), j))
    keyed.sort()
    jis = [j for _, j in keyed]
    names = [lat.ground.names[key[1]] if key[0] == 0 else f"j{key[1]}" for key, _ in keyed]
    g = GroundSet(tuple(names))

    def phi(x: AttrSet) -> AttrSet:
        union = 0
        for k in bits(x):
            union |= jis[k]
        top = lat.closure(union)
        return sum(1 << k for k, j in enumerate(jis) if is_subset(j, top))

    return canonical_from_closure(g, phi)


# set cover ----------------------------------------------------------------

@dataclass(frozen=True)
class SetCoverInstance:
    q: GroundSet
    family: tuple[AttrSet, ...]

    def __post_init__(self):
        union = 0
        for s in self.family:
            if not s:
                raise ValueError("empty member in set-cover family")
            union |= s
        if union != self.q.full:
            raise ValueError("family does not cover Q")

    @classmethod
    def from_names(cls, q: Sequence[str], family: Iterable[Iterable[str]]) -> SetCoverInstance:
        g = GroundSet(tuple(q))
        return cls(g, tuple(dict.fromkeys(g.mask(list(s)) for s in family)))

    @classmethod
    def parse(cls, text: str) -> SetCoverInstance:
        lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty set-cover instance")
        return cls.from_names(lines[0], lines[1:])

    @property
    def is_trivial(self) -> bool:
        """Q itself or some Q∖{q} is in the family."""
        full = self.q.full
        return any(s == full or popcount(full & ~s) == 1 for s in self.family)

    @property
    def extended(self) -> tuple[AttrSet, ...]:
        """The family with every singleton added."""
        singles = [1 << i for i in range(self.q.n)]
        return tuple(dict.fromkeys(list(self.family) + singles))

    @property
    def big(self) -> list[AttrSet]:
        return [s for s in self.family if popcount(s) > 1]

    def fmt(self, cover: Iterable[AttrSet]) -> list[list[str]]:
        return [self.q.names_of(s) for s in cover]


def brute_force_set_cover(inst: SetCoverInstance, extended: bool = True) -> list[AttrSet]:
    """Smallest covering subfamily (first found in combination order)."""
    fam = inst.extended if extended else inst.family
    for r in range(1, len(fam) + 1):
        for combo in combinations(fam, r):
            u = 0
            for s in combo:
                u |= s
            if u == inst.q.full:
                return list(combo)
    raise AssertionError("unreachable: the family covers Q")


@dataclass(frozen=True)
class SetCoverReduction:
    sigma: ImplicationSet
    lattice: FiniteLattice
    target: AttrSet  # the critical set (non-binary mode) or {w} (binary mode)
    decode_map: dict

    def decode(self, witness: AttrSet) -> list[AttrSet]:
        """Read a generator of the target back as members of the extended family."""
        return [self.decode_map[a] for a in bits(witness)]


def _z_names(k: int) -> list[str]:
    return ["z"] if k == 1 else [f"z{i}" for i in range(1, k + 1)]


def _decode_map(inst: SetCoverInstance, ground: GroundSet, zs: list[str]) -> dict:
    out = {ground.index[inst.q.names[i]]: 1 << i for i in range(inst.q.n)}
    for name, s in zip(zs, inst.big):
        out[ground.index[name]] = s
    return out


def _double_big(lat: FiniteLattice, inst: SetCoverInstance, zs: list[str]) -> FiniteLattice:
    for name, s in zip(zs, inst.big):
        lat = double_element(lat, lat.closure(s), name)
    return lat


def _system_on(lat: FiniteLattice) -> ImplicationSet:
    sigma = standard_system_from_lattice(lat)
    if sigma.ground.names != lat.ground.names:
        raise AssertionError("every attribute should stay join-irreducible")
    return sigma


def setcover_nonbinary(inst: SetCoverInstance, pivot: str | None = None) -> SetCoverReduction:
    """Bounded-lattice system whose distinguished critical set Q∪Z has minimum
    generators that decode to minimum set covers.

    ``pivot`` picks q for the doubled coatom Q∖{q}; default is the first
    attribute of Q.
    """
    if inst.is_trivial:
        raise PreconditionError("trivial set-cover instance; solve it directly")
    zs = _z_names(len(inst.big))
    lat = _double_big(boolean_lattice(inst.q.names), inst, zs)
    q = inst.q.index[pivot] if pivot is not None else 0
    t = lat.closure(inst.q.full & ~(1 << q))
    lat = double_element(lat, t, "w")
    sigma = _system_on(lat)
    g = sigma.ground
    target = g.full & ~g.bit("w")
    return SetCoverReduction(sigma, lat, target, _decode_map(inst, g, zs))


def setcover_binary(inst: SetCoverInstance) -> SetCoverReduction:
    """Bounded-lattice system where the minimum B with φ(B) = φ(w)∖{w}
    decodes to a minimum set cover."""
    if inst.is_trivial:
        raise PreconditionError("trivial set-cover instance; solve it directly")
    g0 = GroundSet(inst.q.names + ("w",))
    w = 1 << inst.q.n
    lat = ClosedFamily(g0, tuple(range(1 << inst.q.n)) + (inst.q.full | w,))
    zs = _z_names(len(inst.big))
    lat = _double_big(lat, inst, zs)
    sigma = _system_on(lat)
    g = sigma.ground
    return SetCoverReduction(sigma, lat, g.bit("w"), _decode_map(inst, g, zs))


@dataclass(frozen=True)
class B4Double:
    instance: SetCoverInstance
    reduction: SetCoverReduction

    @property
    def sigma(self) -> ImplicationSet:
        return self.reduction.sigma


def b4double() -> B4Double:
    inst = SetCoverInstance.from_names(
        ["q1", "q2", "q3", "q4"], [["q1"], ["q2"], ["q3"], ["q4"], ["q1", "q2"]]
    )
    return B4Double(inst, setcover_nonbinary(inst, pivot="q4"))


# random systems -----------------------------------------------------------

def _attr_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"x{i}" for i in range(n))


def random_system(n: int, density: float = 0.5, seed: int = 0,
                  max_tries: int = 10000) -> ImplicationSet:
    """Reproducible random standard system.

    About ``2·density·n`` implications are drawn; draws that are not
    standard are rejected and redrawn from the same generator.
    """
    g = GroundSet(_attr_names(n))
    m = round(2 * density * n)
    if m == 0 or n < 2:
        return ImplicationSet(g, ())
    rng = random.Random(seed)
    for _ in range(max_tries):
        imps = []
        for _ in range(m):
            k = rng.randint(1, min(3, n - 1))
            prem = rng.sample(range(n), k)
            rest = [i for i in range(n) if i not in prem]
            concl = rng.sample(rest, rng.randint(1, min(2, len(rest))))
            imps.append(Implication(sum(1 << i for i in prem), sum(1 << i for i in concl)))
        sigma = ImplicationSet(g, tuple(imps))
        if is_standard(sigma):
            return sigma
    raise RuntimeError("no standard system found; lower the density")
