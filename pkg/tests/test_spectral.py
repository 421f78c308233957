import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adjspec.errors import InconsistentSpectrum, MultiplicityMismatch
from adjspec.matpoly import (
    MatPoly,
    conj_transpose,
    exact_matrix,
    identity,
    mat_rank,
    max_abs,
    to_approx,
    zeros,
)
from adjspec.roots import Spectrum, parse_spectrum
from adjspec.scalars import as_exact
from adjspec.spectral import (
    decompose,
    derivative_identity_residual,
    jordan_chains,
    jordan_structure,
    nilpotent,
    projector,
    q_factor,
    derivative_identity_sides,
)
from conftest import EX1_P0, EX1_P3, EX2_N1P1, EX2_NM1PM1, EX2_P1, EX2_PM1
from generators import planted_jordan, planted_symmetric


def by_lambda(decomp):
    return {c.lam: c for c in decomp.components}


def test_q_factor():
    s1 = parse_spectrum("0:2,3:1")
    assert q_factor(s1, 0).to_text() == "z - 3"
    s2 = parse_spectrum("-1:2,1:2")
    assert q_factor(s2, 1).to_text() == "z^2 + 2z + 1"
    assert q_factor(parse_spectrum("5:3"), 0).to_text() == "1"


def test_ex1_projectors(ex1):
    d = by_lambda(decompose(ex1))
    assert (d[0].P == exact_matrix(EX1_P0)).all()
    assert (d[3].P == exact_matrix(EX1_P3)).all()
    assert max_abs(d[0].N) == 0 and max_abs(d[3].N) == 0


def test_ex2_projectors_and_nilpotents(ex2):
    d = by_lambda(decompose(ex2))
    assert (d[1].P == exact_matrix(EX2_P1)).all()
    assert (d[-1].P == exact_matrix(EX2_PM1)).all()
    assert (d[1].N == exact_matrix(EX2_N1P1)).all()
    assert (d[-1].N == exact_matrix(EX2_NM1PM1)).all()


def test_standalone_projector_and_nilpotent(ex2):
    dec = decompose(ex2)
    i = dec.spectrum.eigenvalues.index(1)
    assert (projector(dec.B, dec.spectrum, i) == exact_matrix(EX2_P1)).all()
    assert (nilpotent(dec.B, dec.spectrum, i) == exact_matrix(EX2_N1P1)).all()


def test_reconstruction_forms(ex1, ex2):
    d1 = by_lambda(decompose(ex1))
    assert (d1[3].P * as_exact(3) == ex1).all()
    d2 = by_lambda(decompose(ex2))
    Id = identity(4)
    assert ((d2[1].N + Id).dot(d2[1].P) + (d2[-1].N - Id).dot(d2[-1].P) == ex2).all()


def test_diagonal_matrix():
    A = exact_matrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    dec = decompose(A)
    for k, c in enumerate(dec.components):
        E = zeros(3)
        E[k, k] = as_exact(1)
        assert (c.P == E).all()
        assert max_abs(c.N) == 0


def test_all_residuals_zero_on_fixtures(ex1, ex2):
    for A in (ex1, ex2):
        dec = decompose(A)
        assert all(v == 0 for v in dec.residuals.values())


def test_derivative_identity_ex1_first_derivative(ex1):
    dec = decompose(ex1)
    i = dec.spectrum.eigenvalues.index(0)
    left, right = derivative_identity_sides(dec, i, 1)
    # B'(0) = (0 - 3) P_0
    assert (left == exact_matrix(EX1_P0) * as_exact(-3)).all()
    assert derivative_identity_residual(ex1, dec, i, 1) == 0


def test_derivative_identity_ex2_value(ex2):
    dec = decompose(ex2)
    i = dec.spectrum.eigenvalues.index(1)
    N, P = exact_matrix(EX2_N1P1), exact_matrix(EX2_P1)
    two = identity(4) * as_exact(2)
    expected = N.dot(N + two).dot(N + two).dot(P)
    assert (dec.B(as_exact(1)) == expected).all()
    assert derivative_identity_residual(ex2, dec, i, 0) == 0


def test_derivative_identity_range_checked(ex1):
    dec = decompose(ex1)
    with pytest.raises(ValueError):
        derivative_identity_sides(dec, 0, 2)


def test_simple_eigenvalue_rank_one_adjugate(ex1):
    dec = decompose(ex1)
    i = dec.spectrum.eigenvalues.index(3)
    c = dec.components[i]
    dp = dec.chardata.p.derivative()
    assert (dec.B(c.lam) == c.P * dp(c.lam)).all()
    assert mat_rank(c.P) == 1


def test_jordan_structures(ex1, ex2):
    j1 = {c.lam: jordan_structure(c) for c in decompose(ex1).components}
    assert j1[0].block_sizes == (1, 1) and j1[3].block_sizes == (1,)
    assert j1[0].ranks == (2, 0)
    j2 = {c.lam: jordan_structure(c) for c in decompose(ex2).components}
    assert j2[1].block_sizes == (2,) and j2[-1].block_sizes == (2,)
    assert j2[1].ranks == (2, 1, 0)
    assert j2[1].nilpotency_index == 2
    j3 = [jordan_structure(c) for c in decompose(identity(3)).components]
    assert [j.block_sizes for j in j3] == [(1, 1, 1)]


def test_jordan_chains(ex1, ex2):
    c1 = by_lambda(decompose(ex2))[1]
    chains = jordan_chains(c1, A=ex2)
    assert [len(ch) for ch in chains] == [2]
    head, tail = chains[0]
    assert ((ex2 - identity(4)).dot(head) == tail).all()
    c3 = by_lambda(decompose(ex1))[3]
    (chain,) = jordan_chains(c3, A=ex1)
    assert len(chain) == 1
    assert max_abs((ex1 - identity(3) * as_exact(3)).dot(chain[0])) == 0
    c0 = by_lambda(decompose(ex1))[0]
    assert [len(ch) for ch in jordan_chains(c0, A=ex1)] == [1, 1]


def test_supplied_spectrum(ex1):
    dec = decompose(ex1, parse_spectrum("0:2,3:1"))
    assert all(v == 0 for v in dec.residuals.values())
    with pytest.raises(InconsistentSpectrum):
        decompose(ex1, parse_spectrum("0:1,3:2"))
    with pytest.raises(MultiplicityMismatch):
        decompose(ex1, parse_spectrum("0:2"))
    lax = decompose(ex1, parse_spectrum("0:1,3:2"), strict=False)
    assert lax.residuals["spectrum"] > 0


def test_approx_path(ex2_approx):
    dec = decompose(ex2_approx)
    assert dec.spectrum.multiplicities == [2, 2]
    d = {round(c.lam.real): c for c in dec.components}
    assert max_abs(d[1].P - to_approx(exact_matrix(EX2_P1))) < 1e-8
    assert max_abs(d[-1].N - to_approx(exact_matrix(EX2_NM1PM1))) < 1e-8
    assert dec.residuals["idempotence"] < 1e-8
    assert jordan_structure(d[1]).block_sizes == (2,)


def test_encode_is_json_ready(ex2):
    import json

    doc = decompose(ex2).encode()
    json.dumps(doc)
    assert doc["p"] == "z^4 - 2z^2 + 1"
    assert [c["block_sizes"] for c in doc["components"]] == [[2], [2]]


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_planted_structure_properties(seed):
    A, planted = planted_jordan(np.random.default_rng(seed), max_n=5, complex_eigs=seed % 3 == 0)
    dec = decompose(A)
    assert all(v == 0 for v in dec.residuals.values())
    for c in dec.components:
        js = jordan_structure(c)
        assert js.block_sizes == planted[c.lam]
        assert js.nilpotency_index == max(planted[c.lam]) <= c.multiplicity
        if js.nilpotency_index > 1:
            assert max_abs(np.linalg.matrix_power(to_approx(c.N), js.nilpotency_index - 1)) > 0
        chains = jordan_chains(c, A=A)
        assert sorted((len(ch) for ch in chains), reverse=True) == list(planted[c.lam])


@settings(max_examples=15)
@given(st.integers(0, 2**32 - 1))
def test_hermitian_corollary(seed):
    A, mult = planted_symmetric(np.random.default_rng(seed), max_n=4)
    assert (A == conj_transpose(A)).all()
    dec = decompose(A)
    for c in dec.components:
        assert max_abs(c.N) == 0
        assert (c.P == conj_transpose(c.P)).all()
        assert c.multiplicity == mult[c.lam]
