"""E-basis family for systems without D-cycles, plus F- and FOE-bases."""

from __future__ import annotations

from .canonical import canonical_basis, is_uc_system, saturation
from .core import (
    AttrSet, Implication, ImplicationSet, aggregation, bits, is_subset, metrics, popcount,
)
from .drelation import find_d_cycle
from .errors import BoundExceededError, DCycleError, PreconditionError
from .kbasis import Tiebreak, k_basis, minimal_order_generator, phi_order
from .oracle import (
    check_bound, enumerate_closed, is_join_semidistributive, minimal_covers, oracle_bound,
)


def _require_d_cycle_free(sigma: ImplicationSet) -> None:
    cycle = find_d_cycle(sigma)
    if cycle is not None:
        raise DCycleError(cycle)


def _cover_part(sigma: ImplicationSet) -> list[Implication]:
    order = phi_order(sigma)
    return [Implication(1 << a, 1 << b) for a, b in order.covers]


def _strictly_minimal(target: AttrSet, others) -> bool:
    return not any(o != target and is_subset(o, target) for o in others)


def _e_nonbinary_k(sigma: ImplicationSet) -> list[Implication]:
    """A_K → x for x ∈ Y_C whenever φ(A_K) is ⊆-minimal among the
    K-premises whose canonical conclusion contains x."""
    kb = k_basis(sigma)
    canon = canonical_basis(sigma)
    rows = []
    for imp in kb.implications:
        if imp.is_binary:
            continue
        c = canon.lookup(saturation(sigma, imp.premise))
        rows.append((imp.premise, sigma.closure(imp.premise), c.conclusion))
    out = []
    for x in range(sigma.ground.n):
        cands = [(p, f) for p, f, y in rows if y >> x & 1]
        closures = [f for _, f in cands]
        out.extend(Implication(p, 1 << x) for p, f in cands if _strictly_minimal(f, closures))
    return out


def _e_nonbinary_oracle(sigma: ImplicationSet) -> list[Implication]:
    out = []
    for x in range(sigma.ground.n):
        covers = [c for c in minimal_covers(sigma, x) if popcount(c) > 1]
        closures = [sigma.closure(c) for c in covers]
        out.extend(Implication(c, 1 << x) for c, f in zip(covers, closures)
                   if _strictly_minimal(f, closures))
    return out


def e_basis(sigma: ImplicationSet, route: str = "auto", bound: int | None = None) -> ImplicationSet:
    """Unit-form E-basis.

    ``route="auto"`` uses the K-basis construction and, when the ground set
    is small enough for the oracle, checks it against the minimal-cover
    definition.
    """
    _require_d_cycle_free(sigma)
    binary = _cover_part(sigma)
    if route == "oracle":
        nb = _e_nonbinary_oracle(sigma)
    elif route in ("k", "auto"):
        nb = _e_nonbinary_k(sigma)
        if route == "auto" and sigma.ground.n <= oracle_bound(bound):
            check = ImplicationSet(sigma.ground, tuple(_e_nonbinary_oracle(sigma))).canonical()
            if not check.same_as(ImplicationSet(sigma.ground, tuple(nb))):
                raise RuntimeError("E-basis routes disagree")
    else:
        raise ValueError(f"unknown route {route!r}")
    return ImplicationSet(sigma.ground, tuple(binary + nb)).canonical()


def aggregated_e_basis(sigma: ImplicationSet, route: str = "auto") -> ImplicationSet:
    return aggregation(e_basis(sigma, route)).canonical()


def optimized_e_basis(sigma: ImplicationSet, route: str = "definition") -> ImplicationSet:
    """Optimized E-basis.

    ``route="definition"`` keeps the ≥φ-maximal part of each aggregated
    E-conclusion.  ``route="k"`` filters the K-basis instead: x stays in Y_K
    only when φ(X_K) is ⊆-minimal among K-implications with x on the right.
    The two agree on most systems, but the K filter can empty a conclusion
    whose maximal elements all reappear lower down, losing equivalence.
    """
    _require_d_cycle_free(sigma)
    order = phi_order(sigma)
    if route == "definition":
        agg = aggregated_e_basis(sigma)
        imps = [imp if imp.is_binary else Implication(imp.premise, order.maximal(imp.conclusion))
                for imp in agg.implications]
        return ImplicationSet(sigma.ground, tuple(imps)).canonical()
    if route != "k":
        raise ValueError(f"unknown route {route!r}")
    kb = k_basis(sigma)
    nb = [(imp.premise, sigma.closure(imp.premise), imp.conclusion)
          for imp in kb.implications if not imp.is_binary]
    imps = [imp for imp in kb.implications if imp.is_binary]
    for prem, f, concl in nb:
        keep = 0
        for x in bits(concl):
            closures = [g for _, g, y in nb if y >> x & 1]
            if _strictly_minimal(f, closures):
                keep |= 1 << x
        if keep:
            imps.append(Implication(prem, keep))
    return ImplicationSet(sigma.ground, tuple(imps)).canonical()


def ordered_sequence(basis: ImplicationSet) -> list[Implication]:
    """Binary part, non-binary part, then the binary part again."""
    b = list(basis.binary.implications)
    return b + list(basis.nonbinary.implications) + b


def _f_binary(sigma: ImplicationSet, tiebreak: Tiebreak) -> list[Implication]:
    order = phi_order(sigma)
    out = []
    for a in range(sigma.ground.n):
        below = order.down[a] & ~(1 << a)
        if below:
            out.append(Implication(1 << a, minimal_order_generator(sigma, below, tiebreak, order)))
    return out


def _require_sd(sigma: ImplicationSet, force: bool, bound: int | None) -> None:
    if force or find_d_cycle(sigma) is None:
        return
    try:
        check_bound(sigma.ground, bound)
    except BoundExceededError:
        raise PreconditionError(
            "join-semidistributivity cannot be certified at this size; pass force=True"
        ) from None
    if not is_join_semidistributive(enumerate_closed(sigma, bound), bound):
        raise PreconditionError("closure lattice is not join-semidistributive")


def f_basis(sigma: ImplicationSet, tiebreak: Tiebreak = "first", force: bool = False,
            bound: int | None = None) -> ImplicationSet:
    """K-basis non-binary part plus minimal-order-generator binary part.

    Needs join-semidistributivity: accepted if there is no D-cycle, or if the
    oracle certifies it; ``force`` skips the check (unverified).
    """
    _require_sd(sigma, force, bound)
    nb = list(k_basis(sigma, tiebreak).nonbinary.implications)
    return ImplicationSet(sigma.ground, tuple(_f_binary(sigma, tiebreak) + nb)).canonical()


def foe_basis(sigma: ImplicationSet, tiebreak: Tiebreak = "first") -> ImplicationSet:
    _require_d_cycle_free(sigma)
    nb = list(optimized_e_basis(sigma).nonbinary.implications)
    return ImplicationSet(sigma.ground, tuple(_f_binary(sigma, tiebreak) + nb)).canonical()


def m_sets(sigma: ImplicationSet, exclusion: str = "interval") -> dict[AttrSet, AttrSet]:
    """M(C) for each non-binary critical set C of a UC-system.

    M(C) holds the ≥φ-maximal elements of φ(C)∖C that are excluded by no
    non-binary critical C' with φ(C') ⊂ φ(C).  Every minimum basis puts M(C)
    into the conclusion for C, so Σ|M(C)| bounds sR of the non-binary part
    from below; the bound is not always attained.  ``exclusion="interval"``
    excludes y ∈ φ(C')∖C' (what the optimality argument needs);
    ``exclusion="closure"`` excludes every y ∈ φ(C'), which can undercount.
    """
    if exclusion not in ("interval", "closure"):
        raise ValueError(f"unknown exclusion {exclusion!r}")
    if not is_uc_system(sigma):
        raise PreconditionError("M(C) needs a system with unique critical sets")
    order = phi_order(sigma)
    canon = canonical_basis(sigma)
    crit = [(imp.premise, sigma.closure(imp.premise)) for imp in canon.implications
            if not imp.is_binary]
    out = {}
    for c, f in crit:
        banned = 0
        for c2, f2 in crit:
            if f2 != f and is_subset(f2, f):
                banned |= f2 if exclusion == "closure" else f2 & ~c2
        out[c] = order.maximal(f & ~c) & ~banned
    return out


def m_lower_bound(sigma: ImplicationSet, exclusion: str = "interval") -> int:
    return sum(popcount(m) for m in m_sets(sigma, exclusion).values())


def verify_main_e(sigma: ImplicationSet) -> list[tuple[str, bool, str]]:
    """Aggregated E-basis refines the canonical basis one-to-one, and its
    non-binary premises are the K-basis premises."""
    agg = aggregated_e_basis(sigma)
    canon = canonical_basis(sigma)
    fmt = sigma.ground.fmt
    checks = []
    images = []
    for imp in agg.implications:
        crit = saturation(sigma, imp.premise)
        ok = canon.lookup(crit) is not None and is_subset(
            imp.conclusion, sigma.closure(imp.premise) & ~crit)
        images.append(crit)
        checks.append(("refines", ok, f"{fmt(imp.premise)} ↦ {fmt(crit)}"))
    checks.append(("one-to-one", len(set(images)) == len(images) == len(canon),
                   f"{len(agg)} vs {len(canon)}"))
    s_e, s_c = metrics(agg).s, metrics(canon).s
    checks.append(("size", s_e <= s_c, f"{s_e} <= {s_c}"))
    kprem = set(k_basis(sigma).nonbinary.premises)
    checks.append(("premises-equal-K", set(agg.nonbinary.premises) == kprem, ""))
    return checks
