"""Exponential brute-force ground truth for small ground sets.

Everything here follows the set-theoretic definitions literally (enumerate
all subsets, test the defining property) so that the polynomial routines in
the other modules can be checked against it.  Inputs larger than the oracle
bound are refused with :class:`BoundExceededError`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from .core import (
    AttrSet, GroundSet, Implication, ImplicationSet, bits, is_subset, popcount, subsets,
)
from .relation import PairRelation
from .errors import BoundExceededError, NotStandardError

DEFAULT_ORACLE_BOUND = 14


def oracle_bound(bound: int | None = None) -> int:
    if bound is not None:
        return bound
    return int(os.environ.get("CLOSUREBASES_ORACLE_BOUND", DEFAULT_ORACLE_BOUND))


def check_bound(ground: GroundSet, bound: int | None = None) -> None:
    limit = oracle_bound(bound)
    if ground.n > limit:
        raise BoundExceededError(
            f"ground set has {ground.n} attributes; oracle bound is {limit}"
        )


@dataclass(frozen=True)
class ClosedFamily:
    """An intersection-closed family of subsets of ``ground`` containing it.

    ``closed`` is sorted by cardinality, then by mask value.
    """

    ground: GroundSet
    closed: tuple[AttrSet, ...]

    def __post_init__(self):
        members = sorted(set(self.closed), key=lambda m: (popcount(m), m))
        object.__setattr__(self, "closed", tuple(members))

    @classmethod
    def from_sets(cls, ground: GroundSet, sets: Iterable[AttrSet]) -> ClosedFamily:
        """Family generated by ``sets`` under intersection (plus the full set)."""
        family = {ground.full}
        frontier = list(set(sets) - family)
        family.update(frontier)
        while frontier:
            new = []
            for a in frontier:
                for b in list(family):
                    c = a & b
                    if c not in family:
                        family.add(c)
                        new.append(c)
            frontier = new
        return cls(ground, tuple(family))

    def __contains__(self, x: AttrSet) -> bool:
        return x in self._members

    def __len__(self) -> int:
        return len(self.closed)

    def __iter__(self):
        return iter(self.closed)

    @property
    def _members(self) -> frozenset:
        m = self.__dict__.get("_m")
        if m is None:
            m = frozenset(self.closed)
            self.__dict__["_m"] = m
        return m

    def is_intersection_closed(self) -> bool:
        if self.ground.full not in self:
            return False
        return all((a & b) in self for a in self.closed for b in self.closed)

    @property
    def meet_irreducibles(self) -> tuple[AttrSet, ...]:
        mi = self.__dict__.get("_mi")
        if mi is None:
            full = self.ground.full
            out = []
            for m in self.closed:
                if m == full:
                    continue
                meet = full
                for x in self.closed:
                    if x != m and is_subset(m, x):
                        meet &= x
                if meet != m:
                    out.append(m)
            mi = tuple(out)
            self.__dict__["_mi"] = mi
        return mi

    def closure(self, x: AttrSet) -> AttrSet:
        """Smallest member containing ``x``."""
        result = self.ground.full
        for m in self.meet_irreducibles:
            if is_subset(x, m):
                result &= m
        return result

    def join(self, a: AttrSet, b: AttrSet) -> AttrSet:
        return self.closure(a | b)

    def lower_covers(self, x: AttrSet) -> list[AttrSet]:
        below = [y for y in self.closed if y != x and is_subset(y, x)]
        return [y for y in below if not any(z != y and is_subset(y, z) for z in below)]

    @property
    def join_irreducibles(self) -> list[AttrSet]:
        return [x for x in self.closed if len(self.lower_covers(x)) == 1]


def enumerate_closed(sigma: ImplicationSet, bound: int | None = None) -> ClosedFamily:
    check_bound(sigma.ground, bound)
    return _closed_family(sigma)


@lru_cache(maxsize=512)
def _closed_family(sigma: ImplicationSet) -> ClosedFamily:
    closed = [x for x in range(sigma.ground.full + 1) if sigma.closure(x) == x]
    return ClosedFamily(sigma.ground, tuple(closed))


# standardness ------------------------------------------------------------

@dataclass(frozen=True)
class StandardReport:
    standard: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.standard


def is_standard(sigma: ImplicationSet) -> StandardReport:
    """Check φ(∅)=∅ and that φ({i})∖{i} is closed for every attribute."""
    g = sigma.ground
    bad = []
    if sigma.closure(0) != 0:
        bad.append("∅")
    for i, name in enumerate(g.names):
        rest = sigma.closure(1 << i) & ~(1 << i)
        if sigma.closure(rest) != rest:
            bad.append(name)
    return StandardReport(not bad, tuple(bad))


def require_standard(sigma: ImplicationSet) -> None:
    report = is_standard(sigma)
    if not report:
        raise NotStandardError("closure system is not standard (violations: "
                               + ", ".join(report.violations) + ")")


# quasi-closed and critical sets -------------------------------------------

@dataclass(frozen=True)
class CriticalCatalog:
    quasi_closed: tuple[AttrSet, ...]
    critical: tuple[AttrSet, ...]
    essential: tuple[AttrSet, ...]


def catalog_from_family(family: ClosedFamily,
                        closure: Callable[[AttrSet], AttrSet] | None = None) -> CriticalCatalog:
    """Quasi-closed, critical and essential sets by the literal definitions."""
    phi = closure or family.closure
    closed = family.closed
    quasi = []
    for q in range(family.ground.full + 1):
        if q in family:
            continue
        if all((q & x) in family for x in closed if not is_subset(q, x)):
            quasi.append(q)
    by_closure: dict[AttrSet, list[AttrSet]] = {}
    for q in quasi:
        by_closure.setdefault(phi(q), []).append(q)
    critical = []
    for group in by_closure.values():
        for q in group:
            if not any(p != q and is_subset(p, q) for p in group):
                critical.append(q)
    key = lambda m: (popcount(m), m)
    critical.sort(key=key)
    essential = sorted({phi(c) for c in critical}, key=key)
    return CriticalCatalog(tuple(quasi), tuple(critical), tuple(essential))


def quasi_critical(sigma: ImplicationSet, bound: int | None = None) -> CriticalCatalog:
    check_bound(sigma.ground, bound)
    return _catalog(sigma)


@lru_cache(maxsize=512)
def _catalog(sigma: ImplicationSet) -> CriticalCatalog:
    return catalog_from_family(_closed_family(sigma), sigma.closure)


def canonical_oracle(sigma: ImplicationSet, bound: int | None = None) -> ImplicationSet:
    """Canonical basis assembled directly from the critical sets."""
    cat = quasi_critical(sigma, bound)
    return ImplicationSet.from_pairs(
        sigma.ground, ((c, sigma.closure(c) & ~c) for c in cat.critical)
    ).canonical()


def canonical_from_family(family: ClosedFamily) -> ImplicationSet:
    cat = catalog_from_family(family)
    return ImplicationSet.from_pairs(
        family.ground, ((c, family.closure(c) & ~c) for c in cat.critical)
    ).canonical()


# saturation ---------------------------------------------------------------

def saturation_by_family(sigma: ImplicationSet, x: AttrSet) -> AttrSet:
    """Smallest quasi-closed or closed superset of ``x``."""
    cat = _catalog(sigma)
    result = sigma.ground.full
    for q in cat.quasi_closed:
        if is_subset(x, q):
            result &= q
    for c in _closed_family(sigma).closed:
        if is_subset(x, c):
            result &= c
    return result


def saturation_by_iteration(sigma: ImplicationSet, x: AttrSet) -> AttrSet:
    """Union of q^k(x) with q(X) = X ∪ ⋃{φ(Y) : Y ⊆ X, φ(Y) ⊊ φ(X)}."""
    top = sigma.closure(x)
    cur = x
    while True:
        nxt = cur
        sub = cur
        while True:
            c = sigma.closure(sub)
            if c != top:
                nxt |= c
            if sub == 0:
                break
            sub = (sub - 1) & cur
        if nxt == cur:
            return cur
        cur = nxt


def saturation_oracle(sigma: ImplicationSet, x: AttrSet, bound: int | None = None) -> AttrSet:
    check_bound(sigma.ground, bound)
    a = saturation_by_family(sigma, x)
    b = saturation_by_iteration(sigma, x)
    if a != b:
        raise RuntimeError(
            f"saturation definitions disagree on {sigma.ground.fmt(x)}: "
            f"{sigma.ground.fmt(a)} vs {sigma.ground.fmt(b)}"
        )
    return a


# minimal covers and the D-relation ---------------------------------------

def _attr(ground: GroundSet, x: int | str) -> int:
    return ground.index[x] if isinstance(x, str) else x


def _downsets(sigma: ImplicationSet) -> list[AttrSet]:
    return [sigma.closure(1 << i) for i in range(sigma.ground.n)]


def _ideal(down: list[AttrSet], x: AttrSet) -> AttrSet:
    out = 0
    for i in bits(x):
        out |= down[i]
    return out


def _nontrivial_covers(sigma: ImplicationSet, x: int, down: list[AttrSet]) -> list[AttrSet]:
    xb = 1 << x
    above = 0  # attributes y with y ≥φ x
    for i, d in enumerate(down):
        if d & xb:
            above |= 1 << i
    candidates = sigma.ground.full & ~above
    return [c for c in subsets(candidates) if c and sigma.closure(c) & xb]


def _minimal_by_refinement(sigma, x, down, covers):
    cover_set = covers
    out = []
    for c in cover_set:
        ideal = _ideal(down, c)
        if all(is_subset(c, y) for y in cover_set if is_subset(y, ideal)):
            out.append(c)
    return out


def _minimal_by_replacement(sigma, x, down, covers):
    xb = 1 << x
    out = []
    for c in covers:
        ok = True
        for i in bits(c):
            strict_below = down[i] & ~(1 << i)
            alt = (c & ~(1 << i)) | strict_below
            if sigma.closure(alt) & xb:
                ok = False
                break
        if ok:
            out.append(c)
    return out


def minimal_covers(sigma: ImplicationSet, x: int | str, reading: str = "replacement",
                   bound: int | None = None) -> list[AttrSet]:
    """All minimal non-trivial covers of attribute ``x``.

    ``reading="refinement"`` tests every refining cover ``Y ≪ X`` directly;
    ``reading="replacement"`` only tries deleting each member or swapping it
    for everything strictly below it.  Both give the same family.
    """
    check_bound(sigma.ground, bound)
    require_standard(sigma)
    i = _attr(sigma.ground, x)
    down = _downsets(sigma)
    covers = _nontrivial_covers(sigma, i, down)
    if reading == "refinement":
        found = _minimal_by_refinement(sigma, i, down, covers)
    elif reading == "replacement":
        found = _minimal_by_replacement(sigma, i, down, covers)
    else:
        raise ValueError(f"unknown reading {reading!r}")
    return sorted(found, key=lambda m: (popcount(m), m))


def _cover_relation(sigma: ImplicationSet) -> list[tuple[int, int]]:
    down = _downsets(sigma)
    n = sigma.ground.n
    pairs = []
    for a in range(n):
        strict = down[a] & ~(1 << a)
        for b in bits(strict):
            if not any(c != b and (down[c] >> b) & 1 for c in bits(strict)):
                pairs.append((a, b))
    return pairs


def d_relation(sigma: ImplicationSet, bound: int | None = None) -> PairRelation:
    """``xDy`` iff ``y`` lies in some minimal cover of ``x``."""
    pairs = set()
    for x in range(sigma.ground.n):
        for cov in minimal_covers(sigma, x, bound=bound):
            pairs.update((x, y) for y in bits(cov))
    return PairRelation(sigma.ground, frozenset(pairs))


def d_basis(sigma: ImplicationSet, bound: int | None = None) -> ImplicationSet:
    """Unit-form D-basis: cover relation plus ``X → x`` for minimal covers."""
    check_bound(sigma.ground, bound)
    require_standard(sigma)
    imps = [Implication(1 << a, 1 << b) for a, b in _cover_relation(sigma)]
    for x in range(sigma.ground.n):
        for cov in minimal_covers(sigma, x, bound=bound):
            imps.append(Implication(cov, 1 << x))
    return ImplicationSet(sigma.ground, tuple(imps)).canonical()


# lattice-level checks -----------------------------------------------------

def sd_join_failures(family: ClosedFamily):
    """Yield ``(x, y, z)`` with x∨y = x∨z ≠ x∨(y∧z)."""
    elems = family.closed
    join_cache: dict[tuple[AttrSet, AttrSet], AttrSet] = {}

    def join(a, b):
        key = (a, b) if a <= b else (b, a)
        j = join_cache.get(key)
        if j is None:
            j = join_cache[key] = family.closure(a | b)
        return j

    for x in elems:
        groups: dict[AttrSet, list[AttrSet]] = {}
        for y in elems:
            groups.setdefault(join(x, y), []).append(y)
        for t, ys in groups.items():
            for k, y in enumerate(ys):
                for z in ys[k + 1:]:
                    if join(x, y & z) != t:
                        yield x, y, z


def is_join_semidistributive(family: ClosedFamily, bound: int | None = None) -> bool:
    check_bound(family.ground, bound)
    return next(sd_join_failures(family), None) is None


def extreme_points(sigma: ImplicationSet, x: AttrSet) -> AttrSet:
    if sigma.closure(x) != x:
        raise ValueError("extreme points are defined for closed sets only")
    out = 0
    for i in bits(x):
        if not sigma.closure(x & ~(1 << i)) >> i & 1:
            out |= 1 << i
    return out
