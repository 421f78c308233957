"""Adjugate-polynomial route to spectral projectors, Jordan structure and matrix functions."""

from .contour import ContourSpec, moment_quadrature, riesz_quadrature
from .errors import (
    DegenerateBasis,
    DimensionMismatch,
    DivisionByZero,
    InconsistentSpectrum,
    IrrationalSpectrum,
    JetTooShort,
    MultiplicityMismatch,
    NoConvergence,
    ParseError,
    PoleAtEigenvalue,
    PoleAtExpansionPoint,
    SingularMatrix,
)
from .faddeev import CharData, adjugate_poly, faddeev_decompose, verify_fundamental
from .funcalc import FunctionJet, apply, jet_builtin, resolvent_expansion_residual
from .matpoly import MatPoly, Poly, approx_matrix, exact_matrix, identity
from .roots import Spectrum, find_roots_approx, find_roots_exact, validate_spectrum
from .scalars import DEFAULT_TOL, GaussianRational, Tolerance
from .spectral import (
    JordanStructure,
    SpectralComponent,
    SpectralDecomposition,
    decompose,
    derivative_identity_residual,
    jordan_chains,
    jordan_structure,
)

__version__ = "0.1.0"
