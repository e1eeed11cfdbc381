"""Time the canonical basis and K-basis on random standard systems."""

from __future__ import annotations

import argparse
import statistics
import time
from dataclasses import dataclass

from closurebases import canonical_basis, k_basis, metrics
from closurebases.instances import random_system


@dataclass
class TimingConfig:
    sizes: tuple[int, ...] = (8, 12, 16, 20)
    density: float = 0.8
    trials: int = 5
    seed: int = 0


def time_one(n: int, density: float, seed: int) -> tuple[float, float, int, int]:
    sigma = random_system(n, density, seed)
    t0 = time.perf_counter()
    canon = canonical_basis(sigma)
    t1 = time.perf_counter()
    kb = k_basis(sigma)
    t2 = time.perf_counter()
    return t1 - t0, t2 - t1, metrics(canon).s, metrics(kb).s


def run(cfg: TimingConfig) -> list[dict]:
    rows = []
    for n in cfg.sizes:
        runs = [time_one(n, cfg.density, cfg.seed + k) for k in range(cfg.trials)]
        rows.append({
            "n": n,
            "canonical_ms": 1000 * statistics.median(r[0] for r in runs),
            "kbasis_ms": 1000 * statistics.median(r[1] for r in runs),
            "s_canonical": statistics.mean(r[2] for r in runs),
            "s_kbasis": statistics.mean(r[3] for r in runs),
        })
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(TimingConfig.sizes))
    ap.add_argument("--density", type=float, default=TimingConfig.density)
    ap.add_argument("--trials", type=int, default=TimingConfig.trials)
    ap.add_argument("--seed", type=int, default=TimingConfig.seed)
    a = ap.parse_args(argv)
    cfg = TimingConfig(tuple(a.sizes), a.density, a.trials, a.seed)
    print(f"{'n':>4} {'canonical ms':>13} {'K-basis ms':>11} {'s(canon)':>9} {'s(K)':>7}")
    for r in run(cfg):
        print(f"{r['n']:>4} {r['canonical_ms']:>13.2f} {r['kbasis_ms']:>11.2f} "
              f"{r['s_canonical']:>9.1f} {r['s_kbasis']:>7.1f}")


if __name__ == "__main__":
    main()
