"""Exact computational toolkit for polytope spectrality questions.

Polytopes are unions of exact-rational simplices. The package computes flag
invariants and signed flag measures, evaluates Fourier transforms of
indicators and flag measures through a boundary recursion, checks candidate
spectra for orthogonality, certifies non-spectrality and non-tiling from a
nonzero invariant, decides translational equidecomposability, and verifies
the cone-domain main-term approximation of the indicator transform.
"""

from .asymptotics import (
    ConeDomain,
    MainTermReport,
    TrigPoly,
    almost_periods,
    cone_contains,
    main_term_residual,
    ray_vector,
    sample_cone,
    standardize_flag,
    trig_poly,
    verify_main_term,
)
from .equidecomp import (
    EquidecompVerdict,
    equidecomposable_to_cube,
    translation_equidecomposable,
)
from .fourier import (
    ComplexValue,
    Frequency,
    PrecisionError,
    ft_face_measure,
    ft_flag_measure,
    ft_indicator,
    quadrature_oracle,
    stokes_residual,
)
from .geometry import (
    FaceSimplex,
    Flag,
    GeometryError,
    LinearMap,
    Polytope,
    Rational,
    Simplex,
    Subspace,
    apply_linear,
    direction_subspace,
    face_volume,
    make_polytope,
    parse_polytope,
    point,
    polytope_volume,
    simplex_faces,
    simplex_volume,
)
from .hadwiger import (
    FaceChain,
    FlagMeasure,
    HadwigerValue,
    enumerate_flags,
    face_chains,
    flag_measure,
    hadwiger_invariant,
    invariant_profile,
)
from .spectral import (
    Certificate,
    CentralSymmetryReport,
    OrthogonalityReport,
    SpectrumCandidate,
    central_symmetry_report,
    non_spectrality_certificate,
    orthogonality_report,
)

__version__ = "0.1.0"
