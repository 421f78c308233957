"""
Characteristic polynomial and adjugate polynomial B(z) = Adj(z - A) from the
Faddeev-LeVerrier recurrence::

    C_0 = 1,   alpha_l = -tr(A C_{l-1}) / l,   C_l = A C_{l-1} + alpha_l 1

so that det(z - A) = z^n + alpha_1 z^{n-1} + ... + alpha_n and
B(z) = z^{n-1} + z^{n-2} C_1 + ... + C_{n-1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matpoly import MatPoly, Poly, _check_square, is_exact, like_identity, max_abs, trace
from .scalars import DEFAULT_TOL, ONE, Tolerance


@dataclass(frozen=True)
class CharData:
    n: int
    alphas: tuple            # alpha_1 .. alpha_n
    C_seq: tuple             # C_0 .. C_{n-1}
    p: Poly                  # monic, ascending coefficients
    terminal: np.ndarray     # A C_{n-1} + alpha_n 1, zero by Cayley-Hamilton


def faddeev_decompose(A: np.ndarray) -> CharData:
    _check_square(A)
    n = A.shape[0]
    Id = like_identity(A)
    C = Id
    C_seq = [C]
    alphas = []
    for ell in range(1, n + 1):
        AC = A @ C
        alpha = -trace(AC) / ell
        alphas.append(alpha)
        C = AC + Id * alpha
        if ell < n:
            C_seq.append(C)
    one = ONE if is_exact(A) else 1 + 0j
    p = Poly([*reversed(alphas), one])
    return CharData(n=n, alphas=tuple(alphas), C_seq=tuple(C_seq), p=p, terminal=C)


def adjugate_poly(cd: CharData) -> MatPoly:
    """B(z) with the coefficient of z^k equal to C_{n-1-k}."""
    return MatPoly(list(reversed(cd.C_seq)))


def adjugate(A: np.ndarray) -> MatPoly:
    return adjugate_poly(faddeev_decompose(A))


def verify_fundamental(A: np.ndarray, cd: CharData, tol: Tolerance = DEFAULT_TOL) -> float:
    """Max-norm of (z 1 - A) B(z) - p(z) 1, compared coefficient by coefficient."""
    B = adjugate_poly(cd)
    z_minus_A = MatPoly([-A, like_identity(A)])
    diff = z_minus_A * B - MatPoly.scalar(cd.p, cd.n)
    return diff.max_abs()


def cayley_hamilton_residual(A: np.ndarray, p: Poly) -> float:
    """Max-norm of p(A)."""
    return max_abs(p.eval_matrix(A))


def trace_derivative_residual(cd: CharData) -> float:
    """Max coefficient difference between tr B(z) and p'(z)."""
    B = adjugate_poly(cd)
    trB = Poly([trace(C) for C in B.coeffs])
    return trB.max_abs_diff(cd.p.derivative())
