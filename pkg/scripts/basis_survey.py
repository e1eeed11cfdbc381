"""Compare basis sizes across the basis family on random D-cycle-free systems.

Also counts how often the M(C) lower bound is attained by the optimized
E-basis, and how often a top/bottom optimum basis pair shows up.
"""

from __future__ import annotations

import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass

from closurebases import (
    aggregated_e_basis, canonical_basis, equivalent, is_d_cycle_free, k_basis, metrics,
    optimized_e_basis, verify_hierarchy,
)
from closurebases.ebasis import m_lower_bound
from closurebases.instances import random_system


@dataclass
class SurveyConfig:
    systems: int = 200
    n_min: int = 3
    n_max: int = 7
    density: float = 0.9
    seed: int = 1
    hierarchy: bool = True


def survey(cfg: SurveyConfig) -> dict:
    tally: Counter = Counter()
    misses = []
    span = cfg.n_max - cfg.n_min + 1
    for k in range(cfg.systems):
        n = cfg.n_min + k % span
        sigma = random_system(n, cfg.density, cfg.seed + k)
        if not is_d_cycle_free(sigma):
            tally["d_cycle"] += 1
            continue
        tally["d_cycle_free"] += 1
        canon, kb = canonical_basis(sigma), k_basis(sigma)
        agg, oe = aggregated_e_basis(sigma), optimized_e_basis(sigma)
        tally["s_canonical"] += metrics(canon).s
        tally["s_k"] += metrics(kb).s
        tally["s_e_aggregated"] += metrics(agg).s
        tally["s_oe"] += metrics(oe).s
        if not equivalent(optimized_e_basis(sigma, "k"), sigma):
            tally["k_route_not_equivalent"] += 1
        bound = m_lower_bound(sigma)
        if bound == metrics(oe.nonbinary).sR:
            tally["m_bound_attained"] += 1
        else:
            misses.append(k)
        if cfg.hierarchy and n <= 6:
            rep = verify_hierarchy(sigma)
            tally["hierarchy_ok" if rep.ok else "hierarchy_failed"] += 1
    return {"config": asdict(cfg), "tally": dict(tally), "m_bound_missed": misses}


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    d = SurveyConfig()
    ap.add_argument("--systems", type=int, default=d.systems)
    ap.add_argument("--n-min", type=int, default=d.n_min)
    ap.add_argument("--n-max", type=int, default=d.n_max)
    ap.add_argument("--density", type=float, default=d.density)
    ap.add_argument("--seed", type=int, default=d.seed)
    ap.add_argument("--no-hierarchy", action="store_true")
    a = ap.parse_args(argv)
    cfg = SurveyConfig(a.systems, a.n_min, a.n_max, a.density, a.seed, not a.no_hierarchy)
    print(json.dumps(survey(cfg), indent=2))


if __name__ == "__main__":
    main()
