"""
Dense matrices, scalar polynomials and matrix-valued polynomials.

Matrices are plain numpy arrays: ``dtype=object`` holding
:class:`~adjspec.scalars.GaussianRational` for the exact path and
``complex128`` for the approximate path.  Every routine here dispatches on
that dtype, so callers never pass a mode flag around.

Polynomial coefficients are stored in ascending order of degree, so the
Taylor coefficient of order ``k`` is simply ``coeffs[k]``.
"""

from __future__ import annotations

import math
import warnings
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, PoleAtExpansionPoint, SingularMatrix
from .scalars import (
    DEFAULT_TOL,
    ONE,
    ZERO,
    GaussianRational,
    Tolerance,
    as_exact,
    encode,
    format_exact,
    is_exact_scalar,
    is_zero,
)

# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def is_exact(M: np.ndarray) -> bool:
    return M.dtype == object


def exact_matrix(rows) -> np.ndarray:
    """Build an exact square matrix from ints, Fractions, strings or GaussianRationals."""
    M = np.array([[as_exact(x) for x in row] for row in rows], dtype=object)
    _check_square(M)
    return M


def approx_matrix(rows) -> np.ndarray:
    M = np.array([[complex(x) for x in row] for row in rows], dtype=complex)
    _check_square(M)
    return M


def to_approx(M: np.ndarray) -> np.ndarray:
    if not is_exact(M):
        return np.asarray(M, dtype=complex)
    return np.vectorize(complex, otypes=[complex])(M) if M.size else M.astype(complex)


def identity(n: int, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.eye(n, dtype=complex)
    M = zeros(n, exact=True)
    for i in range(n):
        M[i, i] = ONE
    return M


def zeros(n: int, exact: bool = True, m: int | None = None) -> np.ndarray:
    shape = (n, n if m is None else m)
    if not exact:
        return np.zeros(shape, dtype=complex)
    M = np.empty(shape, dtype=object)
    M.fill(ZERO)
    return M


def like_identity(M: np.ndarray) -> np.ndarray:
    return identity(M.shape[0], is_exact(M))


def _check_square(M: np.ndarray):
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {M.shape}")


def mat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[-1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def mat_add(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot add {A.shape} and {B.shape}")
    return A + B


def mat_sub(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot subtract {B.shape} from {A.shape}")
    return A - B


def mat_scale(c, A: np.ndarray) -> np.ndarray:
    return A * c


def trace(M: np.ndarray):
    _check_square(M)
    t = M[0, 0]
    for i in range(1, M.shape[0]):
        t = t + M[i, i]
    return t


def mat_power(M: np.ndarray, k: int) -> np.ndarray:
    result = like_identity(M)
    for _ in range(k):
        result = result @ M
    return result


def conj_transpose(M: np.ndarray) -> np.ndarray:
    if is_exact(M):
        return np.vectorize(lambda x: x.conjugate(), otypes=[object])(M.T)
    return M.conj().T


def max_abs(M) -> float:
    """Max-norm of a matrix or vector; exactly 0.0 iff every entry is zero."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    if is_exact(M):
        nz = [abs(x) for x in M.flat if x]
        if not nz:
            return 0.0
        # a nonzero exact entry must never be reported as 0.0
        return max(max(nz), math.ulp(0.0))
    return float(np.max(np.abs(M)))


def encode_matrix(M: np.ndarray) -> list:
    return [[encode(x) for x in row] for row in M]


def matrices_equal(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))


def _pivot_threshold(M: np.ndarray, tol: Tolerance) -> float:
    row_norm = float(np.max(np.sum(np.abs(M), axis=1))) if M.size else 0.0
    return tol.abs_eps * (1.0 + row_norm)


def _integral_rows(M: np.ndarray) -> tuple[list[list[GaussianRational]], int]:
    """Scale each row to Gaussian integers; also returns the product of the scale factors."""
    rows, total = [], 1
    for row in M:
        den = 1
        for x in row:
            den = math.lcm(den, x.re.denominator, x.im.denominator)
        rows.append([x * den for x in row])
        total *= den
    return rows, total


def _bareiss(rows: list[list], ncols: int) -> tuple[int, list, int]:
    """Fraction-free elimination with full pivot search.

    Returns (rank, pivots, sign) where ``pivots[-1]`` is the determinant of the
    leading rank x rank block up to ``sign``.  Operates in place.
    """
    nrows = len(rows)
    prev = ONE
    sign = 1
    pivots = []
    for k in range(min(nrows, ncols)):
        pos = next(
            ((i, j) for j in range(k, ncols) for i in range(k, nrows) if rows[i][j]), None
        )
        if pos is None:
            break
        i, j = pos
        if i != k:
            rows[k], rows[i] = rows[i], rows[k]
            sign = -sign
        if j != k:
            for r in rows:
                r[k], r[j] = r[j], r[k]
            sign = -sign
        piv = rows[k][k]
        for i in range(k + 1, nrows):
            rik = rows[i][k]
            for j in range(k + 1, ncols):
                rows[i][j] = (rows[i][j] * piv - rik * rows[k][j]) / prev
            rows[i][k] = ZERO
        prev = piv
        pivots.append(piv)
    return len(pivots), pivots, sign


def _complete_pivot_rank(M: np.ndarray, tol: Tolerance) -> int:
    A = np.array(M, dtype=complex)
    thresh = _pivot_threshold(A, tol)
    nrows, ncols = A.shape
    rank = 0
    for k in range(min(nrows, ncols)):
        sub = np.abs(A[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= thresh:
            break
        i += k
        j += k
        A[[k, i], :] = A[[i, k], :]
        A[:, [k, j]] = A[:, [j, k]]
        A[k + 1:, k:] -= np.outer(A[k + 1:, k] / A[k, k], A[k, k:])
        rank += 1
    return rank


def mat_rank(M: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Rank by fraction-free elimination (exact) or complete pivoting (approx)."""
    if M.size == 0:
        return 0
    if is_exact(M):
        rows, _ = _integral_rows(M)
        return _bareiss(rows, M.shape[1])[0]
    return _complete_pivot_rank(M, tol)


def mat_det(M: np.ndarray):
    """Determinant by elimination (Bareiss on the exact path, LU otherwise)."""
    _check_square(M)
    n = M.shape[0]
    if not is_exact(M):
        return complex(np.linalg.det(M))
    rows, scale = _integral_rows(M)
    rank, pivots, sign = _bareiss(rows, n)
    if rank < n:
        return ZERO
    return pivots[-1] * sign / scale


def mat_solve(M: np.ndarray, rhs: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Solve ``M X = rhs``; raises SingularMatrix on a (numerically) zero pivot."""
    _check_square(M)
    if rhs.shape[0] != M.shape[0]:
        raise DimensionMismatch(f"rhs has {rhs.shape[0]} rows, matrix has {M.shape[0]}")
    if is_exact(M):
        return _solve_exact(M, rhs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(np.asarray(M, dtype=complex), check_finite=True)
    if np.min(np.abs(np.diag(lu))) <= _pivot_threshold(M, tol):
        raise SingularMatrix("resolvent is singular to working tolerance")
    return scipy.linalg.lu_solve((lu, piv), np.asarray(rhs, dtype=complex))


def _solve_exact(M: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    vec = rhs.ndim == 1
    R = rhs.reshape(n, -1)
    aug = [list(M[i]) + [as_exact(x) for x in R[i]] for i in range(n)]
    width = len(aug[0])
    for k in range(n):
        p = next((i for i in range(k, n) if aug[i][k]), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        aug[k], aug[p] = aug[p], aug[k]
        inv = ONE / aug[k][k]
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    X = np.array([row[n:width] for row in aug], dtype=object)
    return X.reshape(n) if vec else X


def pivot_columns(M: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> list[int]:
    """Indices of the pivot columns of the row echelon form, scanning left to right.

    On the exact path the first nonzero entry is the pivot; on the approximate
    path the largest remaining entry of the column is used and columns whose
    best pivot is below the scale-aware threshold are skipped.
    """
    exact = is_exact(M)
    A = [list(r) for r in M] if exact else np.array(M, dtype=complex)
    nrows, ncols = M.shape
    thresh = 0.0 if exact else _pivot_threshold(np.asarray(A), tol)
    pivots: list[int] = []
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        if exact:
            p = next((i for i in range(r, nrows) if A[i][j]), None)
            if p is None:
                continue
            A[r], A[p] = A[p], A[r]
            for i in range(r + 1, nrows):
                if A[i][j]:
                    f = A[i][j] / A[r][j]
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        else:
            col = np.abs(A[r:, j])
            p = int(np.argmax(col))
            if col[p] <= thresh:
                continue
            p += r
            A[[r, p]] = A[[p, r]]
            A[r + 1:, :] -= np.outer(A[r + 1:, j] / A[r, j], A[r, :])
        pivots.append(j)
        r += 1
    return pivots


def nullspace(M: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Basis of the right null space, one vector per column."""
    nrows, ncols = M.shape
    if not is_exact(M):
        if M.size == 0:
            return np.eye(ncols, dtype=complex)
        _, s, vh = np.linalg.svd(np.asarray(M, dtype=complex))
        thresh = _pivot_threshold(M, tol)
        rank = int(np.sum(s > thresh))
        return vh[rank:].conj().T
    # reduced row echelon form, exact
    A = [list(r) for r in M]
    pivots = []
    r = 0
    for j in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][j]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = ONE / A[r][j]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][j]:
                f = A[i][j]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
    free = [j for j in range(ncols) if j not in pivots]
    basis = zeros(ncols, exact=True, m=len(free))
    for k, f in enumerate(free):
        basis[f, k] = ONE
        for row, pj in enumerate(pivots):
            basis[pj, k] = -A[row][f]
    return basis


# ---------------------------------------------------------------------------
# scalar polynomials
# ---------------------------------------------------------------------------


def _zero_like(c):
    return ZERO if is_exact_scalar(c) else 0j


class Poly:
    """Scalar polynomial with ascending coefficients.

    Exact polynomials hold GaussianRational coefficients; approximate ones hold
    Python complex.  Trailing zeros are stripped on construction (for the
    approximate path only when a Tolerance is supplied).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, tol: Tolerance | None = None):
        cs = list(coeffs)
        if cs and all(is_exact_scalar(c) for c in cs):
            cs = [as_exact(c) for c in cs]
            while cs and not cs[-1]:
                cs.pop()
        else:
            cs = [complex(c) for c in cs]
            while cs and (cs[-1] == 0 or (tol is not None and abs(cs[-1]) <= tol.abs_eps)):
                cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence[tuple], exact: bool = True) -> Poly:
        """Monic product of (z - r)^m over ``(r, m)`` pairs."""
        p = cls([ONE] if exact else [1 + 0j])
        for r, m in roots:
            lin = cls([-r, ONE if exact else 1 + 0j])
            for _ in range(m):
                p = p * lin
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return not self.coeffs or isinstance(self.coeffs[0], GaussianRational)

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO if self.exact else 0j

    def __call__(self, z):
        acc = self.coeff(len(self.coeffs) - 1)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def eval_matrix(self, M: np.ndarray) -> np.ndarray:
        """Horner evaluation with a square-matrix argument."""
        Id = like_identity(M)
        cs = self.coeffs if is_exact(M) else [complex(c) for c in self.coeffs]
        if not cs:
            return M * 0
        acc = Id * cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc @ M + Id * c
        return acc

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly([])
        out = [_zero_like(self.coeffs[0])] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self, k: int = 1) -> Poly:
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * j for j, c in enumerate(cs)][1:]
        return Poly(cs)

    def deflate(self, c) -> tuple[Poly, object]:
        """Synthetic division by (z - c): returns (quotient, remainder)."""
        if self.degree < 1:
            return Poly([]), self.coeff(0)
        out = [self.coeffs[-1]]
        for a in reversed(self.coeffs[1:-1]):
            out.append(a + c * out[-1])
        rem = self.coeffs[0] + c * out[-1]
        return Poly(list(reversed(out))), rem

    def max_abs_diff(self, other: Poly) -> float:
        n = max(len(self.coeffs), len(other.coeffs))
        if n == 0:
            return 0.0
        return max_abs(np.array([self.coeff(k) - other.coeff(k) for k in range(n)], dtype=object))

    def to_text(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign, body = _coeff_text(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and body == "1":
                body = ""
            terms.append((sign, body + mono if body or mono else "1"))
        s0, t0 = terms[0]
        out = ("-" if s0 < 0 else "") + t0
        for s, t in terms[1:]:
            out += (" - " if s < 0 else " + ") + t
        return out

    def __repr__(self):
        return f"Poly({self.to_text()!r})"

    def encode(self) -> list:
        return [encode(c) for c in self.coeffs]


def _coeff_text(c) -> tuple[int, str]:
    if isinstance(c, GaussianRational):
        if not c.im:
            s = 1 if c.re > 0 else -1
            body = str(abs(c.re))
            return s, body if "/" not in body else f"({body})"
        return 1, f"({format_exact(c)})"
    c = complex(c)
    if c.imag == 0:
        s = 1 if c.real > 0 else -1
        return s, format(abs(c.real), ".15g")
    return 1, f"({format(c.real, '.15g')}{c.imag:+.15g}i)"


def poly_eval(p: Poly, z):
    return p(z)


def _shift_coeffs(coeffs: list, c) -> list:
    # repeated synthetic division by (z - c); works for scalar or matrix coefficients
    b = list(coeffs)
    d = len(b) - 1
    for k in range(d):
        for j in range(d - 1, k - 1, -1):
            b[j] = b[j] + b[j + 1] * c
    return b


def taylor_shift(p: Poly, c) -> Poly:
    """Coefficients q_k with p(z) = sum_k q_k (z - c)^k."""
    if not p.coeffs:
        return p
    if p.exact:
        c = as_exact(c)
    return Poly(_shift_coeffs(p.coeffs, c))


def series_inverse_at(q: Poly, c, order: int, tol: Tolerance = DEFAULT_TOL) -> list:
    """Taylor coefficients g_0..g_order of 1/q(z) about z = c."""
    shifted = taylor_shift(q, c)
    qs = [shifted.coeff(k) for k in range(order + 1)]
    q0 = qs[0]
    scale = max((abs(x) for x in q.coeffs), default=0.0)
    if is_zero(q0, tol, scale):
        raise PoleAtExpansionPoint(f"q({c}) vanishes; 1/q has a pole there")
    g = [ONE / q0 if isinstance(q0, GaussianRational) else 1 / q0]
    for k in range(1, order + 1):
        acc = qs[1] * g[k - 1]
        for j in range(2, k + 1):
            acc = acc + qs[j] * g[k - j]
        g.append(-acc / q0)
    return g


# ---------------------------------------------------------------------------
# matrix-valued polynomials
# ---------------------------------------------------------------------------


class MatPoly:
    """Polynomial with square-matrix coefficients, ascending degree."""

    def __init__(self, coeffs: Sequence[np.ndarray]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("MatPoly needs at least one coefficient")
        n = coeffs[0].shape[0]
        for C in coeffs:
            if C.shape != (n, n):
                raise DimensionMismatch("all coefficients must share one square shape")
        self.coeffs = coeffs
        self.n = n

    @classmethod
    def scalar(cls, p: Poly, n: int) -> MatPoly:
        """The matrix polynomial p(z) * identity."""
        Id = identity(n, p.exact)
        return cls([Id * c for c in p.coeffs] or [Id * 0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return is_exact(self.coeffs[0])

    def coeff(self, k: int) -> np.ndarray:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return zeros(self.n, self.exact)

    def __call__(self, z) -> np.ndarray:
        acc = self.coeffs[-1]
        for C in reversed(self.coeffs[:-1]):
            acc = acc * z + C
        return acc

    def __mul__(self, other: MatPoly) -> MatPoly:
        out = [zeros(self.n, self.exact) for _ in range(self.degree + other.degree + 1)]
        for i, X in enumerate(self.coeffs):
            for j, Y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + X @ Y
        return MatPoly(out)

    def __sub__(self, other: MatPoly) -> MatPoly:
        d = max(self.degree, other.degree)
        return MatPoly([self.coeff(k) - other.coeff(k) for k in range(d + 1)])

    def max_abs(self) -> float:
        return max(max_abs(C) for C in self.coeffs)

    def entry(self, i: int, j: int) -> Poly:
        return Poly([C[i, j] for C in self.coeffs])

    def derivative_at(self, z, s: int) -> np.ndarray:
        """s-th derivative at z, as s! times the shifted coefficient."""
        return matpoly_taylor_shift(self, z).coeff(s) * math.factorial(s)


def matpoly_eval(B: MatPoly, z) -> np.ndarray:
    return B(z)


def matpoly_taylor_shift(B: MatPoly, c) -> MatPoly:
    """Matrices B_k with B(z) = sum_k B_k (z - c)^k."""
    if B.exact:
        c = as_exact(c)
    return MatPoly(_shift_coeffs(B.coeffs, c))
