import numpy as np
import pytest

from adjspec.contour import ContourSpec, contour_deviations, default_contour, moment_quadrature, riesz_quadrature
from adjspec.matpoly import exact_matrix, max_abs, to_approx
from adjspec.spectral import decompose
from conftest import EX1_P3, EX2_N1P1, EX2_P1
from generators import diagonalizable_batch


def test_ex1_simple_eigenvalue(ex1):
    P = riesz_quadrature(ex1, ContourSpec(3, 1.0, 64))
    assert max_abs(P - to_approx(exact_matrix(EX1_P3))) < 1e-10


def test_isolated_diagonal():
    A = np.diag([0.0, 5.0]).astype(complex)
    P = riesz_quadrature(A, ContourSpec(0, 1.0))
    assert max_abs(P - np.diag([1.0, 0.0])) < 1e-12


def test_ex2_defective_eigenvalue(ex2):
    spec = ContourSpec(1, 0.5, 128)
    assert max_abs(riesz_quadrature(ex2, spec) - to_approx(exact_matrix(EX2_P1))) < 1e-9
    assert max_abs(moment_quadrature(ex2, spec, 1) - to_approx(exact_matrix(EX2_N1P1))) < 1e-9
    # N^2 P = 0 for a 2-block
    assert max_abs(moment_quadrature(ex2, spec, 2)) < 1e-9
    assert max_abs(moment_quadrature(ex2, spec, 0) - riesz_quadrature(ex2, spec)) == 0


def test_contour_spec_validation():
    with pytest.raises(ValueError):
        ContourSpec(0, 0.0)
    with pytest.raises(ValueError):
        ContourSpec(0, 1.0, 0)
    assert len(ContourSpec(0, 1.0, 8).points()) == 8


def test_default_contour_radius(ex1):
    dec = decompose(ex1)
    spec = default_contour(dec.spectrum, 0)
    assert spec.radius == 1.5 and spec.nodes == 64


def test_sum_of_quadrature_projectors_is_identity(ex2):
    dec = decompose(ex2)
    total = sum(riesz_quadrature(ex2, default_contour(dec.spectrum, i)) for i in range(len(dec.spectrum)))
    assert max_abs(total - np.eye(4)) < 1e-9


def test_quadrature_projector_idempotent(ex2):
    dec = decompose(ex2)
    P = riesz_quadrature(ex2, default_contour(dec.spectrum, 0, 32))
    err = max_abs(P - to_approx(dec.components[0].P))
    assert max_abs(P @ P - P) <= 10 * err + 1e-12


@pytest.mark.parametrize("k", range(5))
def test_geometric_convergence(k):
    A, _ = diagonalizable_batch()[k]
    dec = decompose(A)
    for i, c in enumerate(dec.components):
        lam = complex(c.lam)
        gaps = [abs(complex(mu) - lam) for j, (mu, _) in enumerate(dec.spectrum) if j != i]
        spec32 = ContourSpec(lam, 0.5 * min(gaps), 32)
        spec64 = ContourSpec(lam, 0.5 * min(gaps), 64)
        e32 = max_abs(riesz_quadrature(A, spec32) - c.P)
        e64 = max_abs(riesz_quadrature(A, spec64) - c.P)
        assert e64 < 1e-9
        assert e32 >= 10 * e64 or e32 < 1e-12


def test_deviation_report(ex1_approx):
    devs = contour_deviations(decompose(ex1_approx))
    assert [d["index"] for d in devs] == [0, 1]
    assert all(d["projector"] < 1e-9 and d["nilpotent"] < 1e-9 for d in devs)
