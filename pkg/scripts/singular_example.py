"""Zeros of the singular inner function exp((x+z)/(z-x)) - z and the atoms they carry.

Prints, for each zero z_n = e^{i beta_n}, the atom angle -beta_n, its mass by
the closed formula, and the Poisson-limit estimate from the transform alone.

    python3 scripts/singular_example.py --beta 3.141592653589793 --count 5
"""
import argparse
from dataclasses import dataclass

import numpy as np

from bcirc.gallery import singular_example, singular_measure
from bcirc.measure import atom_mass_estimate


@dataclass(frozen=True)
class SingularConfig:
    beta: float = np.pi
    count: int = 5
    oracle: bool = True


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--beta", type=float, default=SingularConfig.beta)
    p.add_argument("--count", type=int, default=SingularConfig.count)
    p.add_argument("--no-oracle", dest="oracle", action="store_false")
    cfg = SingularConfig(**vars(p.parse_args()))

    res = singular_example(cfg.beta, cfg.count)
    mu = singular_measure(cfg.beta)
    order = np.argsort(res.atom_angles)
    print(f"{'branch':>6} {'atom angle':>20} {'mass (formula)':>18} {'mass (oracle)':>15} {'residual':>10}")
    resid = res.defining_residuals()
    for i in order:
        est = atom_mass_estimate(mu, res.atom_angles[i]) if cfg.oracle else float("nan")
        print(f"{res.branches[i]:>6d} {res.atom_angles[i]:>20.15f} {res.atom_masses[i]:>18.15f} "
              f"{est:>15.8f} {resid[i]:>10.1e}")
    print(f"total mass of the {res.atom_masses.size} atoms: {res.atom_masses.sum():.12f}")
    xbar = (-cfg.beta) % (2 * np.pi)
    print(f"exploratory: Poisson-limit estimate at conj(x) (angle {xbar:.6f}): "
          f"{atom_mass_estimate(mu, xbar):.3e}")


if __name__ == "__main__":
    main()
