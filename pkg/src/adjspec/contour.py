"""
Quadrature oracle for spectral projectors.

The trapezoidal rule on a circle z_k = c + r w^k, w = exp(2 pi i / M), turns

    (1/2 pi i) \\oint (z - c)^l (z - A)^{-1} dz

into (r^{l+1} / M) sum_k w^{k(l+1)} (z_k - A)^{-1}.  With exactly one
eigenvalue inside the circle this approximates N^l P for that eigenvalue and
converges geometrically in M.  Everything here is floating point.
"""

from dataclasses import dataclass

import numpy as np

from .matpoly import mat_solve, max_abs, to_approx
from .roots import Spectrum
from .scalars import DEFAULT_TOL, Tolerance


@dataclass(frozen=True)
class ContourSpec:
    center: complex
    radius: float
    nodes: int = 64

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.nodes < 1:
            raise ValueError("need at least one quadrature node")

    def points(self) -> np.ndarray:
        return self.center + self.radius * np.exp(2j * np.pi * np.arange(self.nodes) / self.nodes)


def default_contour(spectrum: Spectrum, i: int, nodes: int = 64) -> ContourSpec:
    """Circle about lambda_i with half the distance to the nearest other eigenvalue."""
    lam = complex(spectrum[i][0])
    gaps = [abs(complex(mu) - lam) for j, (mu, _) in enumerate(spectrum) if j != i]
    radius = 0.5 * min(gaps) if gaps else 1.0
    return ContourSpec(center=lam, radius=radius, nodes=nodes)


def moment_quadrature(
    A: np.ndarray, spec: ContourSpec, l: int = 0, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Trapezoidal approximation of (1/2 pi i) \\oint (z - center)^l (z - A)^{-1} dz."""
    A = to_approx(A)
    n = A.shape[0]
    Id = np.eye(n, dtype=complex)
    w = np.exp(2j * np.pi * np.arange(spec.nodes) / spec.nodes)
    acc = np.zeros((n, n), dtype=complex)
    for wk in w:
        z = spec.center + spec.radius * wk
        acc += wk ** (l + 1) * mat_solve(z * Id - A, Id, tol)
    return acc * (spec.radius ** (l + 1) / spec.nodes)


def riesz_quadrature(A: np.ndarray, spec: ContourSpec, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    return moment_quadrature(A, spec, 0, tol)


def contour_deviations(decomp, nodes: int = 64, tol: Tolerance = DEFAULT_TOL) -> list[dict]:
    """Per eigenvalue max-entry deviation between quadrature and algebraic P_i, N_i."""
    out = []
    for i, c in enumerate(decomp.components):
        spec = default_contour(decomp.spectrum, i, nodes)
        P_q = riesz_quadrature(decomp.A, spec, tol)
        N_q = moment_quadrature(decomp.A, spec, 1, tol)
        out.append(
            {
                "index": i,
                "radius": spec.radius,
                "nodes": nodes,
                "projector": max_abs(P_q - to_approx(c.P)),
                "nilpotent": max_abs(N_q - to_approx(c.N)),
            }
        )
    return out
