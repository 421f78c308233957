"""
Command-line front end.

    adjspec charpoly  MATRIX [--with-faddeev]
    adjspec adjugate  MATRIX
    adjspec spectral  MATRIX [--eigenvalues "l:m,..."]
    adjspec jordan    MATRIX [--chains]
    adjspec funcalc   MATRIX --fn exp|power:k|poly:c0,c1,..|resolvent:w
    adjspec verify    MATRIX [--contour] [--nodes M] [--threshold T]

MATRIX is a JSON file (or ``-`` for stdin)::

    {"mode": "exact", "rows": [["1", "-1/2"], ["0", "3+1/2i"]]}
    {"mode": "approx", "rows": [[{"re": 1.0, "im": 0.0}, 2.5], ...]}

Exit codes: 0 ok, 2 parse error, 3 spectrum not resolvable,
4 inconsistent spectrum, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import contour, funcalc, spectral
from .errors import (
    IrrationalSpectrum,
    InconsistentSpectrum,
    MultiplicityMismatch,
    NoConvergence,
    ParseError,
    PoleAtEigenvalue,
    PoleAtExpansionPoint,
)
from .faddeev import adjugate_poly, faddeev_decompose
from .matpoly import _check_square, encode_matrix, is_exact, max_abs, to_approx
from .roots import parse_spectrum
from .scalars import DEFAULT_TOL, Tolerance, encode, parse_approx, parse_exact

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SPECTRUM = 3
EXIT_INCONSISTENT = 4
EXIT_VERIFY = 5

DEFAULT_THRESHOLD = 1e-8


# ---------------------------------------------------------------------------
# matrix files
# ---------------------------------------------------------------------------


def parse_matrix(doc) -> np.ndarray:
    """MatrixFile JSON object -> exact (object) or approximate (complex) array."""
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ParseError('matrix file must be an object with "rows"')
    mode = doc.get("mode", "exact")
    rows = doc["rows"]
    if mode not in ("exact", "approx"):
        raise ParseError(f"unknown mode {mode!r}")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError('"rows" must be a non-empty list of lists')
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError("matrix must be square")
    if mode == "exact":
        for r in rows:
            for x in r:
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise ParseError(f"exact entries must be strings or integers, got {x!r}")
        M = np.array([[parse_exact(str(x)) for x in r] for r in rows], dtype=object)
    else:
        M = np.array([[parse_approx(x) for x in r] for r in rows], dtype=complex)
        if not np.all(np.isfinite(M)):
            raise ParseError("non-finite entry")
    _check_square(M)
    return M


def matrix_document(M: np.ndarray) -> dict:
    return {"mode": "exact" if is_exact(M) else "approx", "rows": encode_matrix(M)}


def load_matrix(path: str) -> np.ndarray:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read matrix file {path!r}: {exc}") from exc
    return parse_matrix(doc)


def _apply_mode(M: np.ndarray, mode: str | None) -> np.ndarray:
    if mode is None or mode == ("exact" if is_exact(M) else "approx"):
        return M
    if mode == "approx":
        return to_approx(M)
    raise ParseError("an approximate matrix cannot be promoted to exact mode")


def _parse_tol(text: str | None) -> Tolerance:
    if text is None:
        return DEFAULT_TOL
    try:
        parts = [float(t) for t in text.split(",")]
        return Tolerance(parts[0], parts[1] if len(parts) > 1 else parts[0])
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad tolerance {text!r}") from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _decompose(A, args, tol, strict=True):
    spectrum = None
    if args.eigenvalues:
        spectrum = parse_spectrum(args.eigenvalues, exact=is_exact(A))
    return spectral.decompose(A, spectrum, tol, strict=strict)


def _residual_value(v: float, exact: bool):
    if exact:
        return "0" if v == 0 else repr(v)
    return v


def _thresholds(decomp, base: float) -> dict:
    if decomp.exact:
        return {k: 0.0 for k in decomp.residuals}
    n = decomp.A.shape[0]
    poly_scale = max(1.0, max_abs(decomp.A)) ** n
    th = {k: base for k in decomp.residuals}
    for k in ("fundamental", "cayley_hamilton", "spectrum", "derivative_identity"):
        th[k] = base * poly_scale
    return th


def cmd_charpoly(A, args, tol) -> tuple[dict, int]:
    cd = faddeev_decompose(A)
    out = {
        "mode": "exact" if is_exact(A) else "approx",
        "n": cd.n,
        "p": cd.p.to_text(),
        "coefficients": cd.p.encode(),
        "alphas": [encode(a) for a in cd.alphas],
    }
    if args.with_faddeev:
        out["C_seq"] = [encode_matrix(C) for C in cd.C_seq]
    return out, EXIT_OK


def cmd_adjugate(A, args, tol) -> tuple[dict, int]:
    B = adjugate_poly(faddeev_decompose(A))
    return {
        "mode": "exact" if is_exact(A) else "approx",
        "n": B.n,
        "coefficients": [encode_matrix(C) for C in B.coeffs],
        "entries": [[B.entry(i, j).to_text() for j in range(B.n)] for i in range(B.n)],
    }, EXIT_OK


def cmd_spectral(A, args, tol) -> tuple[dict, int]:
    decomp = _decompose(A, args, tol)
    out = decomp.encode(tol)
    exact = decomp.exact
    th = _thresholds(decomp, args.threshold)
    ok = all(v <= th[k] for k, v in decomp.residuals.items())
    out["residuals"] = {k: _residual_value(v, exact) for k, v in decomp.residuals.items()}
    out["pass"] = ok
    return out, EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_jordan(A, args, tol) -> tuple[dict, int]:
    decomp = _decompose(A, args, tol)
    items = []
    for c in decomp.components:
        js = spectral.jordan_structure(c, tol)
        d = js.encode()
        if args.chains:
            chains = spectral.jordan_chains(c, tol, A=decomp.A)
            d["chains"] = [[[encode(x) for x in v] for v in ch] for ch in chains]
        items.append(d)
    return {"mode": "exact" if decomp.exact else "approx", "n": A.shape[0], "eigenvalues": items}, EXIT_OK


def cmd_funcalc(A, args, tol) -> tuple[dict, int]:
    if not args.fn:
        raise ParseError("funcalc needs --fn")
    decomp = _decompose(A, args, tol)
    kind, param = funcalc.parse_function(args.fn, exact=decomp.exact)
    jets = funcalc.jets_for(decomp, kind, param)
    F = funcalc.apply(decomp, jets)
    return {
        "mode": "exact" if is_exact(F) else "approx",
        "function": args.fn,
        "matrix": encode_matrix(F),
    }, EXIT_OK


def cmd_verify(A, args, tol) -> tuple[dict, int]:
    decomp = _decompose(A, args, tol, strict=False)
    exact = decomp.exact
    residuals = dict(decomp.residuals)
    th = _thresholds(decomp, args.threshold)
    per_pair = {f"{i}:{s}": v for (i, s), v in decomp.derivative_identity.items()}
    report = {}
    if args.contour:
        devs = contour.contour_deviations(decomp, nodes=args.nodes, tol=tol)
        report["contour"] = devs
        residuals["contour_projector"] = max(d["projector"] for d in devs)
        residuals["contour_nilpotent"] = max(d["nilpotent"] for d in devs)
        th["contour_projector"] = th["contour_nilpotent"] = args.threshold
    ok = all(v <= th[k] for k, v in residuals.items())
    report = {
        "mode": "exact" if exact else "approx",
        "n": A.shape[0],
        "spectrum": decomp.spectrum.encode(),
        "residuals": {k: _residual_value(v, exact and not k.startswith("contour")) for k, v in residuals.items()},
        "derivative_identity_by_pair": {k: _residual_value(v, exact) for k, v in per_pair.items()},
        "thresholds": th,
        **report,
        "pass": ok,
    }
    return report, EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "charpoly": cmd_charpoly,
    "adjugate": cmd_adjugate,
    "spectral": cmd_spectral,
    "jordan": cmd_jordan,
    "funcalc": cmd_funcalc,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjspec",
        description="Adjugate polynomial, spectral projectors and matrix functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("matrix", help="matrix JSON file, or - for stdin")
    common.add_argument("--mode", choices=("exact", "approx"))
    common.add_argument("--eigenvalues", help='spectrum as "lambda:mult,lambda:mult,..."')
    common.add_argument("--tol", help="ABS[,REL] tolerances for the approximate path")
    common.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                        help="approximate-mode residual threshold (default 1e-8)")
    common.add_argument("--output", help="write JSON here instead of stdout")

    sub.add_parser("charpoly", parents=[common]).add_argument("--with-faddeev", action="store_true")
    sub.add_parser("adjugate", parents=[common])
    sub.add_parser("spectral", parents=[common])
    sub.add_parser("jordan", parents=[common]).add_argument("--chains", action="store_true")
    fc = sub.add_parser("funcalc", parents=[common])
    fc.add_argument("--fn", required=True, help="exp | power:k | poly:c0,c1,... | resolvent:w")
    vf = sub.add_parser("verify", parents=[common])
    vf.add_argument("--contour", action="store_true", help="compare against quadrature projectors")
    vf.add_argument("--nodes", type=int, default=64)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        tol = _parse_tol(args.tol)
        A = _apply_mode(load_matrix(args.matrix), args.mode)
        out, code = COMMANDS[args.command](A, args, tol)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IrrationalSpectrum as exc:
        print(
            f"error: a degree-{exc.residual_degree} factor of the characteristic polynomial has no "
            'exact root; pass --eigenvalues "lambda:mult,..." or use --mode approx',
            file=sys.stderr,
        )
        return EXIT_SPECTRUM
    except NoConvergence as exc:
        print(f"error: {exc}; pass --eigenvalues to supply the spectrum", file=sys.stderr)
        return EXIT_SPECTRUM
    except (InconsistentSpectrum, MultiplicityMismatch, PoleAtExpansionPoint, PoleAtEigenvalue) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    text = json.dumps(out, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
