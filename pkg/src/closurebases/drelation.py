"""The D-relation route: Σ*, the Δ relation and D-cycle detection."""

from __future__ import annotations

from .canonical import canonical_basis, is_regular
from .core import Implication, ImplicationSet, bits
from .errors import PreconditionError
from .kbasis import Tiebreak, minimal_order_generator, phi_order
from .oracle import d_relation
from .relation import PairRelation

__all__ = [
    "PairRelation", "sigma_star", "delta", "transitive_closure", "has_cycle",
    "find_d_cycle", "is_d_cycle_free", "d_relation",
]


def sigma_star(sigma: ImplicationSet, tiebreak: Tiebreak = "first") -> ImplicationSet:
    """Canonical basis with each non-binary premise replaced by its K-premise."""
    order = phi_order(sigma)
    canon = canonical_basis(sigma)
    imps = []
    for imp in canon.implications:
        prem = imp.premise
        if not imp.is_binary:
            prem = minimal_order_generator(sigma, prem, tiebreak, order)
        imps.append(Implication(prem, imp.conclusion))
    return ImplicationSet(sigma.ground, tuple(imps)).canonical()


def delta(sigma: ImplicationSet) -> PairRelation:
    """``aΔb`` iff some non-binary ``A → B`` has a ∈ A and b ∈ B.

    Only meaningful for regular bases; irregular input is rejected.
    """
    if not is_regular(sigma):
        raise PreconditionError("Δ is defined on regular bases only")
    pairs = set()
    for imp in sigma.implications:
        if imp.is_binary:
            continue
        for a in bits(imp.premise):
            for b in bits(imp.conclusion):
                pairs.add((a, b))
    return PairRelation(sigma.ground, frozenset(pairs))


def transitive_closure(rel: PairRelation) -> PairRelation:
    return rel.transitive_closure()


def has_cycle(rel: PairRelation) -> bool:
    return rel.has_cycle()


def find_d_cycle(sigma: ImplicationSet, tiebreak: Tiebreak = "first") -> list[str] | None:
    """A cycle of Δ on Σ*, which exists iff the D-relation has a cycle."""
    return delta(sigma_star(sigma, tiebreak)).find_cycle()


def is_d_cycle_free(sigma: ImplicationSet, tiebreak: Tiebreak = "first") -> bool:
    return find_d_cycle(sigma, tiebreak) is None


def verify_tr(sigma: ImplicationSet, bound: int | None = None) -> list[tuple[str, bool, str]]:
    """Δ_{Σ*}^tr against the transitive closure of the dual D-relation,
    plus the pairwise inclusion Δ_{Σ*} ⊆ D^δ."""
    star = delta(sigma_star(sigma))
    dual = d_relation(sigma, bound).dual()
    lhs, rhs = star.transitive_closure(), dual.transitive_closure()
    return [
        ("delta-star-in-dual-D", star <= dual, str(sorted(star.pairs - dual.pairs))),
        ("transitive-closures-equal", lhs.pairs == rhs.pairs,
         f"only Δ: {sorted(lhs.pairs - rhs.pairs)}, only D: {sorted(rhs.pairs - lhs.pairs)}"),
    ]
