"""
Spectral projectors and nilpotent parts from Taylor coefficients of B(z)/q_i(z).

With B(z) = Adj(z - A), p(z) = (z - lambda_i)^{n_i} q_i(z), the expansion of
B(z)/q_i(z) about lambda_i has

    coefficient n_i - 1  ->  P_i          (projector onto ker (A - lambda_i)^{n_i})
    coefficient n_i - 2  ->  N_i P_i      (nilpotent part, when n_i >= 2)

The coefficients are obtained by shifting B to lambda_i, inverting q_i as a
power series about lambda_i and convolving; no quotient is ever differentiated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateBasis, InconsistentSpectrum
from .faddeev import (
    CharData,
    adjugate_poly,
    cayley_hamilton_residual,
    faddeev_decompose,
    verify_fundamental,
)
from .matpoly import (
    MatPoly,
    Poly,
    encode_matrix,
    identity,
    is_exact,
    like_identity,
    mat_power,
    mat_rank,
    matpoly_taylor_shift,
    max_abs,
    nullspace,
    pivot_columns,
    series_inverse_at,
    to_approx,
    trace,
    zeros,
)
from .roots import Spectrum, find_roots, validate_spectrum
from .scalars import DEFAULT_TOL, Tolerance, encode


@dataclass
class SpectralComponent:
    lam: object
    multiplicity: int
    P: np.ndarray
    N: np.ndarray  # stored as N_i P_i, which equals N_i
    q: Poly

    def encode(self) -> dict:
        return {
            "lambda": encode(self.lam),
            "multiplicity": self.multiplicity,
            "q": self.q.to_text(),
            "P": encode_matrix(self.P),
            "N": encode_matrix(self.N),
        }


@dataclass
class SpectralDecomposition:
    A: np.ndarray
    spectrum: Spectrum
    components: list
    residuals: dict = field(default_factory=dict)
    chardata: CharData | None = None
    B: MatPoly | None = None
    derivative_identity: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return is_exact(self.A)

    def encode(self, tol: Tolerance = DEFAULT_TOL) -> dict:
        comps = []
        for c in self.components:
            d = c.encode()
            js = jordan_structure(c, tol)
            d["block_sizes"] = list(js.block_sizes)
            d["nilpotency_index"] = js.nilpotency_index
            comps.append(d)
        return {
            "mode": "exact" if self.exact else "approx",
            "n": self.A.shape[0],
            "p": self.chardata.p.to_text() if self.chardata else None,
            "spectrum": self.spectrum.encode(),
            "components": comps,
            "residuals": dict(self.residuals),
        }


@dataclass(frozen=True)
class JordanStructure:
    lam: object
    multiplicity: int
    block_sizes: tuple       # descending
    nilpotency_index: int
    ranks: tuple             # r_0 = rank P, r_k = rank N^k

    def encode(self) -> dict:
        return {
            "lambda": encode(self.lam),
            "multiplicity": self.multiplicity,
            "block_sizes": list(self.block_sizes),
            "nilpotency_index": self.nilpotency_index,
            "ranks": list(self.ranks),
        }


def q_factor(spectrum: Spectrum, i: int) -> Poly:
    """q_i(z) = prod_{j != i} (z - lambda_j)^{n_j}."""
    others = [e for j, e in enumerate(spectrum.entries) if j != i]
    return Poly.from_roots(others, exact=spectrum.exact)


def quotient_taylor(B: MatPoly, q: Poly, lam, order: int, tol: Tolerance = DEFAULT_TOL) -> list:
    """Taylor coefficients 0..order of B(z)/q(z) about lam."""
    shifted = matpoly_taylor_shift(B, lam)
    g = series_inverse_at(q, lam, order, tol)
    out = []
    for k in range(order + 1):
        acc = shifted.coeff(0) * g[k]
        for j in range(1, k + 1):
            acc = acc + shifted.coeff(j) * g[k - j]
        out.append(acc)
    return out


def projector(B: MatPoly, spectrum: Spectrum, i: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    lam, m = spectrum[i]
    return quotient_taylor(B, q_factor(spectrum, i), lam, m - 1, tol)[m - 1]


def nilpotent(B: MatPoly, spectrum: Spectrum, i: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    lam, m = spectrum[i]
    if m == 1:
        return zeros(B.n, B.exact)
    return quotient_taylor(B, q_factor(spectrum, i), lam, m - 2, tol)[m - 2]


def _component(B: MatPoly, spectrum: Spectrum, i: int, tol: Tolerance) -> SpectralComponent:
    lam, m = spectrum[i]
    q = q_factor(spectrum, i)
    coeffs = quotient_taylor(B, q, lam, m - 1, tol)
    N = coeffs[m - 2] if m >= 2 else zeros(B.n, B.exact)
    return SpectralComponent(lam=lam, multiplicity=m, P=coeffs[m - 1], N=N, q=q)


def derivative_identity_sides(decomp: SpectralDecomposition, i: int, s: int):
    """Both sides of  B^{(s)}(lambda_i) = s! N_i^{n_i-1-s} q_i(N_i + lambda_i) P_i."""
    c = decomp.components[i]
    if not 0 <= s <= c.multiplicity - 1:
        raise ValueError(f"s must lie in [0, {c.multiplicity - 1}], got {s}")
    left = decomp.B.derivative_at(c.lam, s)
    Id = like_identity(c.N)
    right = (
        mat_power(c.N, c.multiplicity - 1 - s) @ c.q.eval_matrix(c.N + Id * c.lam) @ c.P
    ) * math.factorial(s)
    return left, right


def derivative_identity_residual(A: np.ndarray, decomp: SpectralDecomposition, i: int, s: int) -> float:
    left, right = derivative_identity_sides(decomp, i, s)
    return max_abs(left - right)


def _residuals(A, cd, spectrum, comps, spec_res, decomp) -> dict:
    n = A.shape[0]
    exact = is_exact(A)
    Id = identity(n, exact)
    total_P = sum((c.P for c in comps), zeros(n, exact))
    recon = sum((c.P * c.lam + c.N for c in comps), zeros(n, exact))
    orth = [
        max_abs(a.P @ b.P) for ia, a in enumerate(comps) for ib, b in enumerate(comps) if ia != ib
    ]
    res = {
        "fundamental": verify_fundamental(A, cd),
        "cayley_hamilton": cayley_hamilton_residual(A, cd.p),
        "spectrum": spec_res,
        "completeness": max_abs(total_P - Id),
        "idempotence": max(max_abs(c.P @ c.P - c.P) for c in comps),
        "orthogonality": max(orth, default=0.0),
        "commutation": max(
            max(max_abs(c.N @ c.P - c.P @ c.N), max_abs(c.N @ c.P - c.N)) for c in comps
        ),
        "nilpotency": max(max_abs(mat_power(c.N, c.multiplicity)) for c in comps),
        "reconstruction": max_abs(recon - A),
        "invariance": max(max_abs(A @ c.P - c.P @ A) for c in comps),
        "trace": max(abs(trace(c.P) - c.multiplicity) for c in comps),
    }
    per_pair = {}
    for i, c in enumerate(comps):
        for s in range(c.multiplicity):
            per_pair[(i, s)] = derivative_identity_residual(A, decomp, i, s)
    decomp.derivative_identity = per_pair
    res["derivative_identity"] = max(per_pair.values(), default=0.0)
    return {k: float(v) for k, v in res.items()}


def decompose(
    A: np.ndarray,
    spectrum: Spectrum | None = None,
    tol: Tolerance = DEFAULT_TOL,
    strict: bool = True,
) -> SpectralDecomposition:
    """Full spectral decomposition A = sum_i (lambda_i + N_i) P_i.

    The spectrum is found from the characteristic polynomial when not given.
    On the exact path every residual must vanish; otherwise
    InconsistentSpectrum is raised (unless ``strict`` is False).
    """
    if spectrum is not None and not spectrum.exact:
        A = to_approx(A)
    exact = is_exact(A)
    if spectrum is not None and not exact:
        spectrum = spectrum.to_approx()
    cd = faddeev_decompose(A)
    B = adjugate_poly(cd)
    if spectrum is None:
        spectrum = find_roots(cd.p, tol)
    spec_res = validate_spectrum(cd.p, spectrum, tol)
    if exact and strict and spec_res:
        raise InconsistentSpectrum("supplied eigenvalues do not factor the characteristic polynomial")
    comps = [_component(B, spectrum, i, tol) for i in range(len(spectrum))]
    decomp = SpectralDecomposition(A=A, spectrum=spectrum, components=comps, chardata=cd, B=B)
    decomp.residuals = _residuals(A, cd, spectrum, comps, spec_res, decomp)
    if exact and strict:
        bad = {k: v for k, v in decomp.residuals.items() if v}
        if bad:
            raise InconsistentSpectrum(f"nonzero exact residuals: {sorted(bad)}")
    return decomp


# ---------------------------------------------------------------------------
# Jordan structure
# ---------------------------------------------------------------------------


def jordan_structure(c: SpectralComponent, tol: Tolerance = DEFAULT_TOL) -> JordanStructure:
    """Block sizes from r_k = rank(N^k): blocks of size >= k number r_{k-1} - r_k."""
    n = c.P.shape[0]
    ranks = [mat_rank(c.P, tol)]
    Nk = like_identity(c.N)
    while ranks[-1] > 0 and len(ranks) <= n:
        Nk = Nk @ c.N
        ranks.append(mat_rank(Nk, tol))
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    blocks = []
    for k in range(len(ranks) - 1, 0, -1):
        blocks += [k] * (at_least[k - 1] - at_least[k])
    index = next((k for k, r in enumerate(ranks) if r == 0), len(ranks))
    return JordanStructure(
        lam=c.lam,
        multiplicity=c.multiplicity,
        block_sizes=tuple(blocks),
        nilpotency_index=index,
        ranks=tuple(ranks),
    )


def _hstack(cols: list, n: int, exact: bool) -> np.ndarray:
    if not cols:
        return zeros(n, exact, m=0)
    return np.column_stack(cols)


def jordan_chains(
    c: SpectralComponent, tol: Tolerance = DEFAULT_TOL, A: np.ndarray | None = None
) -> list[list[np.ndarray]]:
    """Jordan chains [v, N v, ..., N^{k-1} v] spanning range(P_i).

    Chain heads of length k are chosen, lowest column index first, to extend
    ker(N^{k-1}) on range(P) plus the level-k vectors of longer chains to a
    basis of ker(N^k) on range(P).
    """
    P, N = c.P, c.N
    n = P.shape[0]
    exact = is_exact(P)
    W = P[:, pivot_columns(P, tol)]
    js = jordan_structure(c, tol)
    d = js.nilpotency_index
    kernels = {0: zeros(n, exact, m=0)}
    Nj = like_identity(N)
    for j in range(1, d + 1):
        Nj = Nj @ N
        kernels[j] = W @ nullspace(Nj @ W, tol)

    chains: list[list[np.ndarray]] = []
    for k in range(d, 0, -1):
        level = [ch[len(ch) - k] for ch in chains if len(ch) > k]
        base = [kernels[k - 1][:, j] for j in range(kernels[k - 1].shape[1])] + level
        cand = [kernels[k][:, j] for j in range(kernels[k].shape[1])]
        M = _hstack(base + cand, n, exact)
        for col in pivot_columns(M, tol):
            if col < len(base):
                continue
            v = M[:, col]
            chain = [v]
            for _ in range(k - 1):
                chain.append(N @ chain[-1])
            chains.append(chain)

    _check_chains(chains, c, js, tol, A)
    return chains


def _check_chains(chains, c, js, tol, A):
    n = c.P.shape[0]
    exact = is_exact(c.P)
    vecs = [v for ch in chains for v in ch]
    if len(vecs) != js.ranks[0]:
        raise DegenerateBasis(f"found {len(vecs)} chain vectors, expected {js.ranks[0]}")
    if vecs and mat_rank(_hstack(vecs, n, exact), tol) != len(vecs):
        raise DegenerateBasis("chain vectors are linearly dependent")
    op = c.N if A is None else A - like_identity(A) * c.lam
    scale = 1.0 + max_abs(op)
    for ch in chains:
        for j, v in enumerate(ch):
            target = ch[j + 1] if j + 1 < len(ch) else v * 0
            err = max_abs(op @ v - target)
            bound = 0.0 if exact else tol.abs_eps + tol.rel_eps * scale * max_abs(v)
            if err > bound:
                raise DegenerateBasis(f"chain relation violated by {err:.3g}")
