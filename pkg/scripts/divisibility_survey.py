"""Tally infinite-divisibility verdicts over random and gallery measures.

    python3 scripts/divisibility_survey.py --seed 0 --samples 200
"""
import argparse
from collections import Counter
from dataclasses import dataclass

import numpy as np

from bcirc.convolution import random_atomic
from bcirc.gallery import cyclic_haar, dirac, haar, poisson, singular_measure, two_point
from bcirc.levy import is_infinitely_divisible


@dataclass(frozen=True)
class SurveyConfig:
    seed: int = 0
    samples: int = 200
    max_atoms: int = 5
    r_max: float = 0.999


def verdict_label(v) -> str:
    name = type(v).__name__
    if hasattr(v, "witness"):
        name += f"({type(v.witness).__name__})"
    return name


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=SurveyConfig.seed)
    p.add_argument("--samples", type=int, default=SurveyConfig.samples)
    p.add_argument("--max-atoms", type=int, default=SurveyConfig.max_atoms)
    p.add_argument("--r-max", type=float, default=SurveyConfig.r_max)
    cfg = SurveyConfig(**vars(p.parse_args()))

    gallery = {"dirac(1)": dirac(1.0), "two_point(.3,0,2)": two_point(0.3, 0.0, 2.0), "haar": haar(),
               "cyclic_haar(3)": cyclic_haar(3), "poisson(.7,1)": poisson(0.7, 1.0),
               "singular(pi)": singular_measure(np.pi)}
    print("gallery:")
    for name, mu in gallery.items():
        print(f"  {name:<20} {verdict_label(is_infinitely_divisible(mu, cfg.r_max))}")

    rng = np.random.default_rng(cfg.seed)
    by_atoms: dict[int, Counter] = {}
    for _ in range(cfg.samples):
        mu = random_atomic(rng, cfg.max_atoms)
        by_atoms.setdefault(len(mu), Counter())[verdict_label(is_infinitely_divisible(mu, cfg.r_max))] += 1
    print(f"random atomic measures (seed {cfg.seed}, r_max {cfg.r_max}):")
    for n in sorted(by_atoms):
        print(f"  {n} atoms: " + ", ".join(f"{k}: {c}" for k, c in sorted(by_atoms[n].items())))


if __name__ == "__main__":
    main()
