"""Print the full decomposition of the two worked 3x3 and 4x4 examples.

    python scripts/worked_examples.py [--approx] [--exp]
"""

import argparse
import json
from dataclasses import dataclass

from adjspec.funcalc import apply, jets_for
from adjspec.matpoly import encode_matrix, exact_matrix, to_approx
from adjspec.spectral import decompose, jordan_structure

EXAMPLES = {
    "example1": [[1, -1, 1], [-1, 1, -1], [1, -1, 1]],
    "example2": [[0, 1, 0, 0], [11, 6, -4, -4], [22, 15, -8, -9], [-3, -2, 1, 2]],
}


@dataclass
class Config:
    approx: bool = False
    exp: bool = False


def run(cfg: Config) -> dict:
    out = {}
    for name, rows in EXAMPLES.items():
        A = exact_matrix(rows)
        if cfg.approx:
            A = to_approx(A)
        dec = decompose(A)
        doc = dec.encode()
        doc["jordan"] = [jordan_structure(c).encode() for c in dec.components]
        if cfg.exp:
            doc["exp"] = encode_matrix(apply(dec, jets_for(dec, "exp")))
        out[name] = doc
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--approx", action="store_true", help="run in floating point")
    ap.add_argument("--exp", action="store_true", help="also print exp(A)")
    args = ap.parse_args()
    print(json.dumps(run(Config(approx=args.approx, exp=args.exp)), indent=2))


if __name__ == "__main__":
    main()
