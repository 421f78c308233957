"""
Functions of a matrix from its spectral decomposition:

    f(A) = sum_i sum_{l < n_i} f^{(l)}(lambda_i) / l!  N_i^l P_i

Callers supply function jets (values and derivatives at each eigenvalue)
rather than callables.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import JetTooShort, ParseError, PoleAtEigenvalue
from .matpoly import Poly, identity, mat_solve, max_abs, to_approx, zeros
from .scalars import (
    DEFAULT_TOL,
    GaussianRational,
    Tolerance,
    as_exact,
    is_exact_scalar,
    is_zero,
    parse_approx,
    parse_exact,
)


@dataclass(frozen=True)
class FunctionJet:
    at: object
    values: tuple  # f(at), f'(at), f''(at), ...

    @property
    def exact(self) -> bool:
        return all(isinstance(v, GaussianRational) for v in self.values)


def apply(decomp, jets: Sequence[FunctionJet]) -> np.ndarray:
    """Evaluate f(A) from one jet per spectral component."""
    comps = decomp.components
    if len(jets) != len(comps):
        raise ValueError(f"need {len(comps)} jets, got {len(jets)}")
    exact = decomp.exact and all(j.exact for j in jets)
    n = decomp.A.shape[0]
    out = zeros(n, exact)
    for c, jet in zip(comps, jets):
        if len(jet.values) < c.multiplicity:
            raise JetTooShort(
                f"jet at {jet.at} has {len(jet.values)} entries, multiplicity is {c.multiplicity}"
            )
        P = c.P if exact else to_approx(c.P)
        N = c.N if exact else to_approx(c.N)
        term = P
        for l in range(c.multiplicity):
            if l:
                term = N @ term
            coeff = jet.values[l] / math.factorial(l)
            out = out + term * (coeff if exact else complex(coeff))
    return out


def jet_builtin(kind: str, at, order: int, param=None) -> FunctionJet:
    """Derivatives 0..order of a standard function at ``at``.

    kind is one of ``"exp"`` (approximate only), ``"power"`` (param k),
    ``"poly"`` (param: Poly, or ascending coefficients) and ``"resolvent"``
    (param w, for f(z) = 1/(w - z)).
    """
    exact = is_exact_scalar(at)
    if kind == "exp":
        e = cmath.exp(complex(at))
        return FunctionJet(at, (e,) * (order + 1))
    if kind == "power":
        k = int(param)
        vals = []
        for l in range(order + 1):
            if l > k:
                vals.append(_zero(exact))
            else:
                vals.append(at ** (k - l) * (math.factorial(k) // math.factorial(k - l)))
        return FunctionJet(at, tuple(_norm(v, exact) for v in vals))
    if kind == "poly":
        p = param if isinstance(param, Poly) else Poly(list(param))
        if not exact and p.exact:
            p = Poly([complex(c) for c in p.coeffs])
        vals = tuple(_norm(p.derivative(l)(at) if p.degree >= l else _zero(exact), exact) for l in range(order + 1))
        return FunctionJet(at, vals)
    if kind == "resolvent":
        w = param
        d = w - at
        if is_zero(d, DEFAULT_TOL, abs(at)):
            raise PoleAtEigenvalue(f"resolvent point {w} coincides with eigenvalue {at}")
        return FunctionJet(at, tuple(math.factorial(l) / d ** (l + 1) for l in range(order + 1)))
    raise ValueError(f"unknown function kind {kind!r}")


def _zero(exact):
    return as_exact(0) if exact else 0j


def _norm(v, exact):
    return as_exact(v) if exact and is_exact_scalar(v) else (v if exact else complex(v))


def jets_for(decomp, kind: str, param=None) -> list[FunctionJet]:
    """One built-in jet per component, long enough for its multiplicity."""
    jets = []
    for c in decomp.components:
        at = c.lam
        if not decomp.exact or kind == "exp":
            at = complex(at)
            if kind == "resolvent":
                param = complex(param)
        jets.append(jet_builtin(kind, at, c.multiplicity - 1, param))
    return jets


def parse_function(text: str, exact: bool = True) -> tuple[str, object]:
    """Parse CLI function specs: ``exp``, ``power:k``, ``poly:c0,c1,...`` (ascending), ``resolvent:w``."""
    kind, _, arg = text.partition(":")
    parse = parse_exact if exact else parse_approx
    if kind == "exp" and not arg:
        return "exp", None
    if kind == "power":
        try:
            k = int(arg)
        except ValueError as exc:
            raise ParseError(f"bad power {arg!r}") from exc
        if k < 0:
            raise ParseError("power must be nonnegative")
        return "power", k
    if kind == "poly" and arg:
        return "poly", Poly([parse(c) for c in arg.split(",")])
    if kind == "resolvent" and arg:
        return "resolvent", parse(arg)
    raise ParseError(f"unknown function spec {text!r}")


def resolvent_expansion(decomp, z) -> np.ndarray:
    """sum_i 1/(z - lambda_i) sum_{l < n_i} N_i^l / (z - lambda_i)^l P_i."""
    exact = decomp.exact and is_exact_scalar(z)
    if exact:
        z = as_exact(z)
    n = decomp.A.shape[0]
    out = zeros(n, exact)
    for c in decomp.components:
        lam = c.lam if exact else complex(c.lam)
        d = z - lam if exact else complex(z) - lam
        if is_zero(d, DEFAULT_TOL, abs(lam)):
            raise PoleAtEigenvalue(f"{z} is an eigenvalue")
        P = c.P if exact else to_approx(c.P)
        N = c.N if exact else to_approx(c.N)
        term = P
        for l in range(c.multiplicity):
            if l:
                term = N @ term
            out = out + term / d ** (l + 1)
    return out


def resolvent_expansion_residual(decomp, z, tol: Tolerance = DEFAULT_TOL) -> float:
    """Max-norm gap between the spectral expansion of (z - A)^{-1} and a direct solve."""
    expansion = resolvent_expansion(decomp, z)
    A = decomp.A
    exact = decomp.exact and is_exact_scalar(z)
    if exact:
        Id = identity(A.shape[0], True)
        direct = mat_solve(Id * as_exact(z) - A, Id, tol)
    else:
        A = to_approx(A)
        Id = identity(A.shape[0], False)
        direct = mat_solve(complex(z) * Id - A, Id, tol)
    return max_abs(expansion - direct)
