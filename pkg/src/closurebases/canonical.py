"""Canonical (Duquenne–Guigues) basis, saturation, regularity, UC-systems."""

from __future__ import annotations

from typing import Callable

from .core import (
    AttrSet, GroundSet, Implication, ImplicationSet, aggregation, bits, is_subset,
    popcount,
)
from .errors import PreconditionError
from .oracle import require_standard


def saturation(sigma: ImplicationSet, x: AttrSet) -> AttrSet:
    """σ(x): close ``x`` under the implications whose premise closure is
    strictly smaller than φ(x)."""
    top = sigma.closure(x)
    small = [imp for imp in sigma.implications if sigma.closure(imp.premise) != top]
    result = x
    changed = True
    while changed:
        changed = False
        for imp in small:
            if imp.premise & ~result == 0 and imp.conclusion & ~result:
                result |= imp.conclusion
                changed = True
    return result


def canonical_basis(sigma: ImplicationSet) -> ImplicationSet:
    """Day's two-step reduction of any implication set to its canonical basis."""
    keyed: set[tuple[AttrSet, AttrSet]] = set()
    for imp in sigma.implications:
        sat = saturation(sigma, imp.premise)
        phi = sigma.closure(imp.premise)
        if sat != phi:
            keyed.add((sat, phi))
    kept = [
        (c, f) for c, f in keyed
        if not any(f2 == f and d != c and is_subset(d, c) for d, f2 in keyed)
    ]
    return ImplicationSet.from_pairs(sigma.ground, ((c, f & ~c) for c, f in kept)).canonical()


def canonical_from_closure(ground: GroundSet, phi: Callable[[AttrSet], AttrSet]) -> ImplicationSet:
    """Canonical basis of an arbitrary closure operator via Ganter's NextClosure.

    Pseudo-closed sets are enumerated in lectic order; each contributes
    ``P → φ(P)∖P``.  Requires φ(∅) = ∅.
    """
    if phi(0) != 0:
        raise PreconditionError("the empty set must be closed")
    n = ground.n
    full = ground.full
    found: list[tuple[AttrSet, AttrSet]] = []

    def pseudo_close(x: AttrSet) -> AttrSet:
        changed = True
        while changed:
            changed = False
            for prem, concl in found:
                if prem != x and prem & ~x == 0 and concl & ~x:
                    x |= concl
                    changed = True
        return x

    def next_set(a: AttrSet) -> AttrSet | None:
        for i in reversed(range(n)):
            bit = 1 << i
            if a & bit:
                continue
            low = bit - 1
            b = pseudo_close((a & low) | bit)
            if (b & ~a) & low == 0:
                return b
        return None

    a = 0
    while a is not None:
        c = phi(a)
        if c != a:
            found.append((a, c & ~a))
        if a == full:
            break
        a = next_set(a)
    return ImplicationSet.from_pairs(ground, found).canonical()


def is_regular(sigma: ImplicationSet) -> bool:
    return _irregular(sigma) is None


def _irregular(sigma: ImplicationSet):
    """First non-binary ``{a} ∪ F → D`` with F ⊆ φ({a}), as (position, a, F)."""
    for k, imp in enumerate(sigma.implications):
        if imp.is_binary:
            continue
        for a in bits(imp.premise):
            rest = imp.premise & ~(1 << a)
            if is_subset(rest, sigma.closure(1 << a)):
                return k, a, rest
    return None


def regularize(sigma: ImplicationSet) -> ImplicationSet:
    """Equivalent regular basis, never larger in count, left or right size.

    Each offending ``{a} ∪ F → D`` is split into ``a → D∖φ(F)`` and
    ``F → D∩φ(F)``; results are re-aggregated until no offender remains.
    """
    require_standard(sigma)
    cur = aggregation(sigma)
    while True:
        hit = _irregular(cur)
        if hit is None:
            return cur
        k, a, rest = hit
        d = cur.implications[k].conclusion
        phi_rest = sigma.closure(rest)
        imps = list(cur.implications[:k] + cur.implications[k + 1:])
        if d & ~phi_rest:
            imps.append(Implication(1 << a, d & ~phi_rest))
        if d & phi_rest:
            imps.append(Implication(rest, d & phi_rest))
        cur = aggregation(cur.with_implications(imps))


def is_uc_system(sigma: ImplicationSet) -> bool:
    """True iff distinct critical sets have distinct closures."""
    basis = canonical_basis(sigma)
    closures = [sigma.closure(p) for p in basis.premises]
    return len(set(closures)) == len(closures)


def critical_sets(sigma: ImplicationSet) -> list[AttrSet]:
    """Premises of the canonical basis, sorted by size then mask."""
    return sorted(canonical_basis(sigma).premises, key=lambda m: (popcount(m), m))
