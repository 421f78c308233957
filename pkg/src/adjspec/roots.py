"""
Spectrum of a matrix from its characteristic polynomial.

Three routes are offered: exact extraction of Gaussian-rational roots,
Aberth-Ehrlich iteration followed by clustering for floating point input,
and validation of a spectrum supplied by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import IrrationalSpectrum, MultiplicityMismatch, NoConvergence, ParseError
from .matpoly import Poly, max_abs, taylor_shift
from .scalars import (
    DEFAULT_TOL,
    ZERO,
    GaussianRational,
    Tolerance,
    encode,
    parse_approx,
    parse_exact,
)


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with algebraic multiplicities."""

    entries: tuple

    def __post_init__(self):
        entries = tuple((lam, int(m)) for lam, m in self.entries)
        for _, m in entries:
            if m < 1:
                raise MultiplicityMismatch(f"multiplicity must be positive, got {m}")
        object.__setattr__(self, "entries", entries)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def eigenvalues(self) -> list:
        return [lam for lam, _ in self.entries]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.entries]

    @property
    def exact(self) -> bool:
        return all(isinstance(lam, GaussianRational) for lam, _ in self.entries)

    def to_approx(self) -> Spectrum:
        return Spectrum(tuple((complex(lam), m) for lam, m in self.entries))

    def encode(self) -> list[dict]:
        return [{"lambda": encode(lam), "multiplicity": m} for lam, m in self.entries]


def parse_spectrum(text: str, exact: bool = True) -> Spectrum:
    """Parse ``"lambda:mult,lambda:mult,..."``; a missing ``:mult`` means 1."""
    entries = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        lam_text, sep, mult_text = item.rpartition(":")
        if not sep:
            lam_text, mult_text = item, "1"
        try:
            mult = int(mult_text)
        except ValueError as exc:
            raise ParseError(f"bad multiplicity in {item!r}") from exc
        lam = parse_exact(lam_text) if exact else parse_approx(lam_text)
        entries.append((lam, mult))
    if not entries:
        raise ParseError("empty eigenvalue list")
    return Spectrum(tuple(entries))


def _sort_key(lam):
    if isinstance(lam, GaussianRational):
        return (lam.re, lam.im)
    lam = complex(lam)
    return (lam.real, lam.imag)


# ---------------------------------------------------------------------------
# exact path
# ---------------------------------------------------------------------------


def _monic(p: Poly) -> Poly:
    lead = p.coeffs[-1]
    return p if lead == 1 else Poly([c / lead for c in p.coeffs])


def _gaussian_integers_of_norm(m: int) -> list[GaussianRational]:
    out = []
    for a in range(math.isqrt(m) + 1):
        b2 = m - a * a
        b = math.isqrt(b2)
        if b * b != b2:
            continue
        for sa in {a, -a}:
            for sb in {b, -b}:
                out.append(GaussianRational(sa, sb))
    return out


def _gaussian_root(P: Poly) -> GaussianRational | None:
    """One Gaussian-integer root of a monic Z[i] polynomial with P(0) != 0, or None.

    Any such root divides the constant term, so its norm divides the norm of
    the constant term; candidates are enumerated by increasing norm.
    """
    from sympy import divisors

    c0 = P.coeffs[0]
    norm0 = int(c0.norm())
    bound = 1.0 + max(abs(c) for c in P.coeffs[:-1])
    for m in divisors(norm0):
        if m > bound * bound + 1:
            break
        for w in sorted(_gaussian_integers_of_norm(m), key=_sort_key):
            q = c0 / w
            if q.is_gaussian_integer() and P(w) == 0:
                return w
    return None


def find_roots_exact(p: Poly) -> Spectrum:
    """All roots of p in Q(i) with multiplicities; IrrationalSpectrum if p does not split."""
    if not p.exact:
        raise TypeError("find_roots_exact needs exact coefficients")
    p = _monic(p)
    n = p.degree
    den = 1
    for c in p.coeffs:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    # P(w) = den^n p(w/den) is monic with Gaussian-integer coefficients
    P = Poly([c * den ** (n - k) for k, c in enumerate(p.coeffs)])
    found = []
    while P.degree >= 1:
        w = ZERO if P.coeffs[0] == 0 else _gaussian_root(P)
        if w is None:
            raise IrrationalSpectrum(
                f"a factor of degree {P.degree} has no Gaussian-rational root; "
                "supply the eigenvalues or use approximate mode",
                residual_degree=P.degree,
            )
        mult = 0
        while P.degree >= 1:
            q, r = P.deflate(w)
            if r != 0:
                break
            P, mult = q, mult + 1
        found.append((w / den, mult))
    found.sort(key=lambda e: _sort_key(e[0]))
    return Spectrum(tuple(found))


# ---------------------------------------------------------------------------
# approximate path
# ---------------------------------------------------------------------------


def cluster_radius(roots: Sequence[complex], tol: Tolerance = DEFAULT_TOL) -> float:
    n = len(roots)
    top = max((abs(r) for r in roots), default=0.0)
    return max(tol.abs_eps, tol.rel_eps * (1.0 + top)) * n


def cluster_roots(roots: Sequence[complex], radius: float, radii: Sequence[float] | None = None):
    """Single-linkage clustering.

    Two estimates are linked when their distance is at most ``radius`` or at
    most the sum of their inclusion radii.  Returns a list of clusters, each a
    sorted list of root estimates, ordered by centroid.
    """
    order = sorted(range(len(roots)), key=lambda k: _sort_key(roots[k]))
    pts = [complex(roots[k]) for k in order]
    rad = [0.0] * len(pts) if radii is None else [float(radii[k]) for k in order]
    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) <= max(radius, rad[i] + rad[j]):
                parent[find(j)] = find(i)
    groups: dict[int, list[complex]] = {}
    for i, z in enumerate(pts):
        groups.setdefault(find(i), []).append(z)
    clusters = list(groups.values())
    clusters.sort(key=lambda c: _sort_key(sum(c) / len(c)))
    return clusters


def _horner_with_bound(a: np.ndarray, z: complex) -> tuple[complex, complex, float]:
    """p(z), p'(z) and a running-error bound for p(z); ``a`` ascending."""
    p = a[-1]
    dp = 0j
    mu = abs(p)
    az = abs(z)
    for c in a[-2::-1]:
        dp = dp * z + p
        p = p * z + c
        mu = mu * az + abs(p)
    return p, dp, 2.0 * len(a) * np.finfo(float).eps * mu


def aberth(a: np.ndarray, tol: Tolerance = DEFAULT_TOL, max_iters: int = 200):
    """Aberth-Ehrlich simultaneous iteration for a monic polynomial (ascending coeffs).

    Returns (roots, inclusion_radii).
    """
    n = len(a) - 1
    center = -a[n - 1] / n
    shifted = taylor_shift(Poly(list(a)), center)
    shifted = np.array([shifted.coeff(k) for k in range(n + 1)], dtype=complex)
    R = 2.0 * max((abs(shifted[k]) ** (1.0 / (n - k)) for k in range(n)), default=0.0)
    if R == 0.0:
        return np.full(n, center), np.zeros(n)
    z = center + R * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.7 / n))
    done = np.zeros(n, dtype=bool)
    for _ in range(max_iters):
        biggest = 0.0
        for k in range(n):
            if done[k]:
                continue
            pz, dpz, noise = _horner_with_bound(a, z[k])
            if abs(pz) <= noise:
                done[k] = True
                continue
            ratio = pz / dpz if dpz != 0 else complex(R)
            diff = z[k] - np.delete(z, k)
            diff = diff[diff != 0]
            s = np.sum(1.0 / diff) if diff.size else 0j
            corr = ratio / (1.0 - ratio * s)
            z[k] -= corr
            biggest = max(biggest, abs(corr))
            if abs(corr) < tol.abs_eps:
                done[k] = True
        if done.all():
            break
    else:
        raise NoConvergence(f"Aberth iteration did not converge in {max_iters} sweeps")
    radii = np.empty(n)
    for k in range(n):
        pz, _, noise = _horner_with_bound(a, z[k])
        diff = z[k] - np.delete(z, k)
        diff = diff[diff != 0]
        denom = abs(np.prod(diff)) if diff.size else 1.0
        radii[k] = n * max(abs(pz), noise) / denom if denom > 0 else 0.0
    return z, radii


def _polish(p: Poly, lam: complex, mult: int, reach: float) -> complex:
    # a root of multiplicity m is a simple root of the (m-1)-th derivative
    f = p.derivative(mult - 1)
    df = f.derivative()
    x = lam
    for _ in range(8):
        d = df(x)
        if d == 0:
            break
        step = f(x) / d
        x = x - step
        if abs(step) <= 4 * np.finfo(float).eps * max(1.0, abs(x)):
            break
    return x if abs(x - lam) <= reach else lam


def find_roots_approx(p: Poly, tol: Tolerance = DEFAULT_TOL, max_iters: int = 200) -> Spectrum:
    """Roots with multiplicities via Aberth-Ehrlich iteration and clustering."""
    a = np.array([complex(c) for c in p.coeffs], dtype=complex)
    a = a / a[-1]
    n = len(a) - 1
    if n < 1:
        return Spectrum(())
    roots, radii = aberth(a, tol, max_iters)
    radius = cluster_radius(roots, tol)
    clusters = cluster_roots(roots, radius, radii)
    pc = Poly(list(a))
    real_coeffs = not np.any(a.imag)
    entries = []
    for members in clusters:
        centroid = sum(members) / len(members)
        spread = max(abs(z - centroid) for z in members)
        lam = complex(_polish(pc, centroid, len(members), max(spread, radius)))
        if real_coeffs and abs(lam.imag) <= radius:
            lam = complex(lam.real, 0.0)
        entries.append((lam, len(members)))
    entries.sort(key=lambda e: _sort_key(e[0]))
    return Spectrum(tuple(entries))


def find_roots(p: Poly, tol: Tolerance = DEFAULT_TOL) -> Spectrum:
    return find_roots_exact(p) if p.exact else find_roots_approx(p, tol)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate_spectrum(p: Poly, s: Spectrum, tol: Tolerance = DEFAULT_TOL) -> float:
    """Residual of a claimed spectrum against p.

    The larger of max |p(lambda_i)| and the coefficient-wise gap between p and
    prod (z - lambda_i)^{n_i}.  On the exact path this is 0.0 iff the spectrum
    is right.
    """
    if s.n != p.degree:
        raise MultiplicityMismatch(f"multiplicities sum to {s.n}, degree is {p.degree}")
    exact = p.exact and s.exact
    if not exact:
        p = Poly([complex(c) for c in p.coeffs])
        s = s.to_approx()
    lead = p.coeffs[-1]
    p = p if lead == 1 else Poly([c / lead for c in p.coeffs])
    evals = max_abs(np.array([p(lam) for lam in s.eigenvalues], dtype=object))
    rebuilt = Poly.from_roots(s.entries, exact=exact)
    return max(float(evals), p.max_abs_diff(rebuilt))
