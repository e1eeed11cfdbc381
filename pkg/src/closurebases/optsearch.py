"""Exhaustive search for optimum bases on small systems.

Finding an optimum basis is NP-hard even without D-cycles, so everything
here is exponential and guarded by a size bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product

from .canonical import canonical_basis, is_regular, saturation
from .core import (
    AttrSet, Implication, ImplicationSet, bits, equivalent, format_set, is_subset, metrics,
    popcount,
    subsets,
)
from .ebasis import m_lower_bound, optimized_e_basis
from .errors import BoundExceededError, PreconditionError
from .oracle import extreme_points, is_standard

log = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 10


def _check_search_bound(sigma: ImplicationSet, bound: int | None) -> None:
    limit = DEFAULT_SEARCH_BOUND if bound is None else bound
    if sigma.ground.n > limit:
        raise BoundExceededError(
            f"{sigma.ground.n} attributes exceeds the search bound {limit}; "
            "optimum bases are NP-hard to find, no heuristic is attempted"
        )


def _least_generator(sigma: ImplicationSet, pool: AttrSet, target: AttrSet,
                     max_size: int) -> tuple[int, AttrSet]:
    idx = list(bits(pool))
    if len(idx) > max_size:
        raise BoundExceededError(f"set of size {len(idx)} exceeds subset bound {max_size}")
    for r in range(len(idx) + 1):
        for combo in combinations(idx, r):
            u = sum(1 << i for i in combo)
            if sigma.closure(u) == target:
                return r, u
    raise AssertionError("unreachable: the pool generates its own closure")


def k_c(sigma: ImplicationSet, c: AttrSet, max_size: int = 20) -> tuple[int, AttrSet]:
    """Smallest U ⊆ C with φ(U) = φ(C); lexicographically least witness."""
    if canonical_basis(sigma).lookup(c) is None:
        raise PreconditionError(f"{sigma.ground.fmt(c)} is not a critical set")
    size, u = _least_generator(sigma, c, sigma.closure(c), max_size)
    assert saturation(sigma, u) == c, "minimum generator must saturate to C"
    return size, u


def b_c(sigma: ImplicationSet, x: int | str, max_size: int = 20) -> tuple[int, AttrSet]:
    """Smallest B with φ(B) = φ({x})∖{x}; lexicographically least witness."""
    if isinstance(x, str):
        x = sigma.ground.index[x]
    below = sigma.closure(1 << x) & ~(1 << x)
    if not below:
        raise PreconditionError(f"{{{sigma.ground.names[x]}}} is not critical")
    size, b = _least_generator(sigma, below, below, max_size)
    assert is_subset(extreme_points(sigma, below), b)
    return size, b


def _generators(sigma: ImplicationSet, c: AttrSet, size: int) -> list[AttrSet]:
    target = sigma.closure(c)
    out = []
    for combo in combinations(list(bits(c)), size):
        u = sum(1 << i for i in combo)
        if sigma.closure(u) == target:
            assert saturation(sigma, u) == c
            out.append(u)
    return out


def _close(imps, x: AttrSet) -> AttrSet:
    changed = True
    while changed:
        changed = False
        for p, v in imps:
            if p & ~x == 0 and v & ~x:
                x |= v
                changed = True
    return x


class _ConclusionSearch:
    """Minimum total conclusion size for fixed premises, one per critical set.

    A basis with these premises is equivalent iff every premise closes to
    its critical closure; only implications with a smaller-or-equal closure
    can fire inside that closure, so each slot is checked as soon as all
    such slots have been assigned.
    """

    def __init__(self, premises: list[AttrSet], closures: list[AttrSet]):
        order = sorted(range(len(premises)), key=lambda i: (popcount(closures[i]), closures[i]))
        self.prem = [premises[i] for i in order]
        self.clo = [closures[i] for i in order]
        self.perm = order
        n = len(order)
        deps = [[j for j in range(n) if is_subset(self.clo[j], self.clo[i])] for i in range(n)]
        self.deps = deps
        self.checks: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            self.checks[max(deps[i])].append(i)
        full = [(self.prem[j], self.clo[j] & ~self.prem[j]) for j in range(n)]
        self.options: list[list[AttrSet]] = []
        for i in range(n):
            room = self.clo[i] & ~self.prem[i]
            others = [full[j] for j in deps[i] if j != i]
            opts = [v for v in subsets(room) if v
                    and _close(others + [(self.prem[i], v)], self.prem[i]) == self.clo[i]]
            opts.sort(key=lambda v: (popcount(v), v))
            self.options.append(opts)
        self.lb = [popcount(o[0]) for o in self.options]
        self.ub = sum(popcount(self.clo[i] & ~self.prem[i]) for i in range(n))

    def solve(self, want_all: bool = True) -> tuple[int, list[list[AttrSet]]]:
        n = len(self.prem)
        if n == 0:
            return 0, [[]]
        suffix = [0] * (n + 1)
        for i in reversed(range(n)):
            suffix[i] = suffix[i + 1] + self.lb[i]
        for total in range(suffix[0], self.ub + 1):
            found: list[list[AttrSet]] = []
            chosen: list[AttrSet] = [0] * n

            def dfs(i: int, budget: int) -> bool:
                if i == n:
                    if budget == 0:
                        found.append(chosen.copy())
                        return not want_all
                    return False
                for v in self.options[i]:
                    size = popcount(v)
                    if size + suffix[i + 1] > budget:
                        break
                    chosen[i] = v
                    ok = True
                    for c in self.checks[i]:
                        imps = [(self.prem[j], chosen[j]) for j in self.deps[c]]
                        if _close(imps, self.prem[c]) != self.clo[c]:
                            ok = False
                            break
                    if ok and dfs(i + 1, budget - size):
                        return True
                return False

            dfs(0, total)
            if found:
                back = []
                for sol in found:
                    row = [0] * n
                    for pos, orig in enumerate(self.perm):
                        row[orig] = sol[pos]
                    back.append(row)
                return total, back
        raise AssertionError("unreachable: the canonical conclusions are always feasible")


@dataclass
class OptimumResult:
    critical: list[AttrSet]
    k: list[int]
    bases: list[ImplicationSet]
    sR: int

    @property
    def s(self) -> int:
        return sum(self.k) + self.sR


def _critical_with_closures(sigma: ImplicationSet):
    canon = canonical_basis(sigma)
    crit = sorted(canon.premises, key=lambda m: (popcount(m), m))
    return crit, [sigma.closure(c) for c in crit]


def optimum_bases(sigma: ImplicationSet, all_bases: bool = True, bound: int | None = None,
                  limit: int = 2000) -> OptimumResult:
    """All optimum bases: one implication per critical set C, premise a
    size-k_C generator inside C, conclusions jointly minimized."""
    _check_search_bound(sigma, bound)
    crit, clo = _critical_with_closures(sigma)
    ks = [k_c(sigma, c)[0] for c in crit]
    prem_choices = [_generators(sigma, c, k) for c, k in zip(crit, ks)]
    combos = 1
    for p in prem_choices:
        combos *= len(p)
    if combos > limit:
        raise BoundExceededError(f"{combos} premise combinations exceed limit {limit}")
    if not all_bases:
        prem_choices = [p[:1] for p in prem_choices]
    best = None
    bases: set[ImplicationSet] = set()
    for prems in product(*prem_choices):
        total, sols = _ConclusionSearch(list(prems), clo).solve(want_all=all_bases)
        if best is None or total < best:
            best, bases = total, set()
        if total == best:
            for concl in sols:
                imps = tuple(Implication(p, v) for p, v in zip(prems, concl))
                bases.add(ImplicationSet(sigma.ground, imps).canonical())
    ordered = sorted(bases, key=lambda b: [i.sort_key() for i in b.implications])
    return OptimumResult(crit, ks, ordered, best or 0)


def min_right_size_with_premises(sigma: ImplicationSet, premises: list[AttrSet]) -> int:
    """Minimum total conclusion size of a basis using exactly these premises
    (one per critical set, in critical-set order)."""
    crit, clo = _critical_with_closures(sigma)
    return _ConclusionSearch(premises, clo).solve(want_all=False)[0]


def minimum_unit_basis_size(sigma: ImplicationSet, max_candidates: int = 40) -> int:
    """Brute force over sets of unit implications X → y, y ∈ φ(X)∖X."""
    cands = []
    for x in subsets(sigma.ground.full):
        if not x:
            continue
        for y in bits(sigma.closure(x) & ~x):
            cands.append(Implication(x, 1 << y))
    if len(cands) > max_candidates:
        raise BoundExceededError(f"{len(cands)} candidate unit implications")
    for r in range(len(cands) + 1):
        for combo in combinations(cands, r):
            if equivalent(ImplicationSet(sigma.ground, combo), sigma):
                return r
    raise AssertionError("unreachable")


@dataclass
class HierarchyReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    conjecture: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [{"name": n, "ok": o, "detail": d} for n, o, d in self.checks],
            "conjecture": self.conjecture,
        }


def verify_hierarchy(sigma: ImplicationSet, bound: int | None = None,
                     unit_brute_force: int = 4) -> HierarchyReport:
    """Cross-check optimum bases against independent minima."""
    rep = HierarchyReport()
    res = optimum_bases(sigma, bound=bound)
    canon = canonical_basis(sigma)
    crit = res.critical
    standard = bool(is_standard(sigma))
    for b in res.bases:
        text = format_set(b)
        m = metrics(b)
        rep.add("equivalent", equivalent(b, sigma), text)
        rep.add("minimum", m.count == len(canon), f"{m.count} vs {len(canon)}")
        rep.add("left-optimum", m.sL == sum(res.k), f"{m.sL} vs {sum(res.k)}")
        rep.add("s<=canonical", m.s <= metrics(canon).s, text)
        if standard:
            rep.add("regular", is_regular(b), text)
            for imp in b.binary.implications:
                x = next(bits(imp.premise))
                rep.add("binary=b_C", popcount(imp.conclusion) == b_c(sigma, x)[0], text)
    # right-optimum: conclusions minimized against the critical sets
    # themselves must give the same total as with minimum premises
    right_min = min_right_size_with_premises(sigma, crit)
    rep.add("right-optimum", res.sR == right_min, f"{res.sR} vs {right_min}")
    nb = {metrics(b.nonbinary).sR for b in res.bases}
    rep.add("sR_nb-constant", len(nb) <= 1, str(sorted(nb)))
    if sigma.ground.n <= unit_brute_force:
        units = minimum_unit_basis_size(sigma)
        rep.add("unit-expansion-minimum", res.sR == units, f"{res.sR} vs {units}")
    for b in res.bases:
        sizes = {sigma.ground.fmt(saturation(sigma, i.premise)): popcount(i.conclusion)
                 for i in b.implications}
        rep.conjecture.append(str(sizes))
    if len(set(rep.conjecture)) > 1:
        log.info("per-critical-set conclusion sizes differ across optimum bases: %s",
                 rep.conjecture)
    return rep


def verify_rs_min(sigma: ImplicationSet, bound: int | None = None) -> list[tuple[str, bool, str]]:
    """sR of the optimized E-basis non-binary part against Σ|M(C)| and, when
    the search is affordable, against every optimum basis."""
    oe = metrics(optimized_e_basis(sigma).nonbinary).sR
    m = m_lower_bound(sigma)
    checks = [("sR(OE)=sum|M(C)|", oe == m, f"{oe} vs {m}")]
    limit = DEFAULT_SEARCH_BOUND if bound is None else bound
    if sigma.ground.n <= limit:
        found = {metrics(b.nonbinary).sR for b in optimum_bases(sigma, bound=bound).bases}
        checks.append(("sR(OE)=optimum", found == {oe}, f"{oe} vs {sorted(found)}"))
    return checks
