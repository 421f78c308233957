"""Error of the trapezoidal Riesz projector against the algebraic projector as M grows.

    python scripts/contour_convergence.py [--seed S] [--count K] [--nodes 8 16 32 64 128]
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from adjspec.contour import ContourSpec, default_contour, riesz_quadrature
from adjspec.matpoly import exact_matrix, max_abs, to_approx
from adjspec.spectral import decompose

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from generators import diagonalizable_float  # noqa: E402


@dataclass
class Config:
    seed: int = 0
    count: int = 5
    nodes: list = field(default_factory=lambda: [8, 16, 32, 64, 128])


def errors_for(A, nodes):
    dec = decompose(A)
    rows = []
    for i, c in enumerate(dec.components):
        base = default_contour(dec.spectrum, i)
        errs = [max_abs(riesz_quadrature(A, ContourSpec(base.center, base.radius, m)) - c.P) for m in nodes]
        rows.append((complex(c.lam), c.multiplicity, errs))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--nodes", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    args = ap.parse_args()
    cfg = Config(args.seed, args.count, args.nodes)

    rng = np.random.default_rng(cfg.seed)
    cases = [("example1", to_approx(exact_matrix([[1, -1, 1], [-1, 1, -1], [1, -1, 1]]))),
             ("example2", to_approx(exact_matrix([[0, 1, 0, 0], [11, 6, -4, -4], [22, 15, -8, -9], [-3, -2, 1, 2]])))]
    cases += [(f"random{k}", diagonalizable_float(rng)[0]) for k in range(cfg.count)]

    header = "matrix      lambda              m  " + "  ".join(f"M={m:<7d}" for m in cfg.nodes)
    print(header)
    for name, A in cases:
        for lam, mult, errs in errors_for(A, cfg.nodes):
            cells = "  ".join(f"{e:9.2e}" for e in errs)
            print(f"{name:<11s} {lam.real:+8.4f}{lam.imag:+8.4f}i  {mult}  {cells}")


if __name__ == "__main__":
    main()
