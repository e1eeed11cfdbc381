"""The ≥φ order, minimal order generators and K-bases."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence, Union

from .canonical import canonical_basis, saturation
from .core import AttrSet, GroundSet, Implication, ImplicationSet, bits, is_subset, popcount
from .errors import BoundExceededError, PreconditionError
from .oracle import require_standard

# "first" / "last" in attribute order, or an explicit priority list of names.
Tiebreak = Union[str, Sequence[str]]


@dataclass(frozen=True)
class PhiOrder:
    """``b ≤φ a`` iff ``b ∈ φ({a})``; ``down[a]`` is φ({a})."""

    ground: GroundSet
    down: tuple[AttrSet, ...]
    covers: tuple[tuple[int, int], ...]

    def leq(self, b: int, a: int) -> bool:
        return bool(self.down[a] >> b & 1)

    def maximal(self, x: AttrSet) -> AttrSet:
        """The ≥φ-maximal elements of ``x``."""
        out = 0
        for a in bits(x):
            if not any(b != a and self.down[b] >> a & 1 for b in bits(x)):
                out |= 1 << a
        return out

    def ideal(self, x: AttrSet) -> AttrSet:
        out = 0
        for a in bits(x):
            out |= self.down[a]
        return out

    def is_ideal(self, x: AttrSet) -> bool:
        return self.ideal(x) == x

    def lower_covers(self, a: int) -> AttrSet:
        out = 0
        for top, b in self.covers:
            if top == a:
                out |= 1 << b
        return out

    def named_covers(self) -> list[tuple[str, str]]:
        n = self.ground.names
        return [(n[a], n[b]) for a, b in self.covers]


def phi_order(sigma: ImplicationSet) -> PhiOrder:
    require_standard(sigma)
    g = sigma.ground
    down = tuple(sigma.closure(1 << a) for a in range(g.n))
    covers = []
    for a in range(g.n):
        strict = down[a] & ~(1 << a)
        for b in bits(strict):
            if not any(c != b and down[c] >> b & 1 for c in bits(strict)):
                covers.append((a, b))
    return PhiOrder(g, down, tuple(covers))


def _priority(ground: GroundSet, tiebreak: Tiebreak) -> list[int]:
    if tiebreak == "first":
        return list(range(ground.n))
    if tiebreak == "last":
        return list(reversed(range(ground.n)))
    if isinstance(tiebreak, str):
        raise ValueError(f"unknown tiebreak {tiebreak!r}")
    head = [ground.index[name] for name in tiebreak]
    return head + [i for i in range(ground.n) if i not in head]


def minimal_order_generator(sigma: ImplicationSet, c: AttrSet, tiebreak: Tiebreak = "first",
                            order: PhiOrder | None = None) -> AttrSet:
    """Greedily drop ≥φ-maximal elements of the order ideal ``c`` while the
    closure is unchanged; return the maximal elements of what remains."""
    order = order or phi_order(sigma)
    if not order.is_ideal(c):
        raise PreconditionError(f"{sigma.ground.fmt(c)} is not a ≥φ order ideal")
    target = sigma.closure(c)
    prio = _priority(sigma.ground, tiebreak)
    x = c
    while True:
        maxs = order.maximal(x)
        for a in prio:
            if maxs >> a & 1 and sigma.closure(x & ~(1 << a)) == target:
                x &= ~(1 << a)
                break
        else:
            return order.maximal(x)


def all_minimal_order_generators(sigma: ImplicationSet, c: AttrSet,
                                 order: PhiOrder | None = None) -> list[AttrSet]:
    """Every minimal order generator of ``c``, over all removal orders."""
    order = order or phi_order(sigma)
    if not order.is_ideal(c):
        raise PreconditionError(f"{sigma.ground.fmt(c)} is not a ≥φ order ideal")
    target = sigma.closure(c)
    seen = set()
    found = set()
    stack = [c]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        nxt = [x & ~(1 << a) for a in bits(order.maximal(x))
               if sigma.closure(x & ~(1 << a)) == target]
        if nxt:
            stack.extend(nxt)
        else:
            found.add(order.maximal(x))
    return sorted(found, key=lambda m: (popcount(m), m))


def k_basis(sigma: ImplicationSet, tiebreak: Tiebreak = "first") -> ImplicationSet:
    order = phi_order(sigma)
    canon = canonical_basis(sigma)
    imps = []
    for imp in canon.implications:
        prem = imp.premise
        if not imp.is_binary:
            prem = minimal_order_generator(sigma, prem, tiebreak, order)
        imps.append(Implication(prem, order.maximal(imp.conclusion)))
    return ImplicationSet(sigma.ground, tuple(imps)).canonical()


def all_k_bases(sigma: ImplicationSet, limit: int = 4096) -> list[ImplicationSet]:
    order = phi_order(sigma)
    canon = canonical_basis(sigma)
    choices = []
    total = 1
    for imp in canon.implications:
        if imp.is_binary:
            prems = [imp.premise]
        else:
            prems = all_minimal_order_generators(sigma, imp.premise, order)
        concl = order.maximal(imp.conclusion)
        choices.append([Implication(p, concl) for p in prems])
        total *= len(prems)
        if total > limit:
            raise BoundExceededError(f"more than {limit} K-bases")
    bases = {ImplicationSet(sigma.ground, combo).canonical() for combo in product(*choices)}
    return sorted(bases, key=lambda b: [i.sort_key() for i in b.implications])


def refines_canonical(sigma: ImplicationSet, basis: ImplicationSet) -> bool:
    """Whether ``basis`` maps one-to-one onto the canonical basis with
    premises inside critical sets of equal closure and conclusions inside
    the canonical conclusions."""
    canon = canonical_basis(sigma)
    if len(canon) != len(basis):
        return False
    used = set()
    for imp in basis.implications:
        crit = saturation(sigma, imp.premise)
        target = canon.lookup(crit)
        if target is None or crit in used:
            return False
        used.add(crit)
        if not is_subset(imp.conclusion, target.conclusion):
            return False
        if sigma.closure(imp.premise) != sigma.closure(crit):
            return False
    return True
