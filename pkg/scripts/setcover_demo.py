"""Build both set-cover reductions for random instances and check that the
recovered optimum matches brute force."""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from closurebases.instances import (
    SetCoverInstance, brute_force_set_cover, setcover_binary, setcover_nonbinary,
)
from closurebases.optsearch import b_c, k_c


@dataclass
class DemoConfig:
    instances: int = 20
    max_q: int = 5
    max_family: int = 6
    seed: int = 7


def random_instance(rng: random.Random, cfg: DemoConfig) -> SetCoverInstance:
    names = [f"q{i + 1}" for i in range(rng.randint(3, cfg.max_q))]
    fam = []
    for _ in range(rng.randint(1, cfg.max_family)):
        fam.append(rng.sample(names, rng.randint(1, len(names) - 2)))
    fam += [[q] for q in names if not any(q in s for s in fam)]
    return SetCoverInstance.from_names(names, fam)


def run(cfg: DemoConfig) -> int:
    rng = random.Random(cfg.seed)
    bad = 0
    for k in range(cfg.instances):
        inst = random_instance(rng, cfg)
        if inst.is_trivial:
            print(f"{k:>3} trivial instance, skipped")
            continue
        opt = brute_force_set_cover(inst)
        nb = setcover_nonbinary(inst)
        kval, gen = k_c(nb.sigma, nb.target)
        bin_red = setcover_binary(inst)
        bval, _ = b_c(bin_red.sigma, "w")
        ok = kval == bval == len(opt)
        bad += not ok
        cover = " | ".join(inst.q.fmt(s) for s in nb.decode(gen) if s & inst.q.full)
        print(f"{k:>3} |Q|={inst.q.n} |F|={len(inst.family)} opt={len(opt)} "
              f"k_C={kval} b_C={bval} cover={cover} {'ok' if ok else 'MISMATCH'}")
    return bad


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    d = DemoConfig()
    ap.add_argument("--instances", type=int, default=d.instances)
    ap.add_argument("--max-q", type=int, default=d.max_q)
    ap.add_argument("--max-family", type=int, default=d.max_family)
    ap.add_argument("--seed", type=int, default=d.seed)
    a = ap.parse_args(argv)
    raise SystemExit(1 if run(DemoConfig(a.instances, a.max_q, a.max_family, a.seed)) else 0)


if __name__ == "__main__":
    main()
