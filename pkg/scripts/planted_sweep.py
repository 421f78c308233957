"""Decompose random exact matrices with planted Jordan structure and report what was recovered.

    python scripts/planted_sweep.py [--seed S] [--count K] [--max-n N]
"""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from adjspec.scalars import format_exact
from adjspec.spectral import decompose, jordan_structure

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from generators import planted_jordan  # noqa: E402


@dataclass
class Config:
    seed: int = 20240501
    count: int = 50
    max_n: int = 6


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    args = ap.parse_args()
    cfg = Config(args.seed, args.count, args.max_n)

    rng = np.random.default_rng(cfg.seed)
    hits = 0
    start = time.perf_counter()
    for k in range(cfg.count):
        A, planted = planted_jordan(rng, cfg.max_n, complex_eigs=k % 5 == 4)
        dec = decompose(A)
        got = {c.lam: jordan_structure(c).block_sizes for c in dec.components}
        ok = got == planted and all(v == 0 for v in dec.residuals.values())
        hits += ok
        blocks = ", ".join(f"{format_exact(lam)}:{list(b)}" for lam, b in got.items())
        print(f"{k:3d}  n={A.shape[0]}  {'ok ' if ok else 'BAD'}  {blocks}")
    print(f"{hits}/{cfg.count} recovered in {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
