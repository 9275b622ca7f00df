"""Exact combinatorics of cyclic quotient singularities and their fillings.

The package computes, in exact integer arithmetic, every invariant of the
smoothing components of a cyclic quotient singularity that is visible from
Hirzebruch-Jung continued fractions: the dual a/b chains and their cone
polylines, the parameter sets K_r(a) via polygon triangulations, the
incidence matrices of picture deformations, the deformation-polynomial
chains with their factorization, the attached smooth complete fans, and
the lattice fingerprints that classify the Milnor fibers as Stein fillings
of lens spaces.
"""

from .contfrac import (
    EdgeData,
    Fraction,
    HJSequence,
    edge_data,
    hj_eval,
    hj_expand,
    is_admissible,
    q_conjugate,
    riemenschneider_dual,
    z_value,
)
from .conegeom import (
    ConePolyline,
    LatticeVector,
    alpha_classes,
    hull_polyline_oracle,
    sigma_polyline,
    supplementary_polyline,
    verify_precdual,
)
from .deformpoly import (
    DEFAULT_DEGREE_CAP,
    MultiPoly,
    WeightVector,
    check_valuation_bound,
    deformation_chain,
    verify_factorization,
    weights,
    z0_exponents,
)
from .errors import DegreeCapError, VerificationError
from .fillings import (
    DiagonalLatticeModel,
    FillingDescriptor,
    MilnorNumbers,
    PlumbingChain,
    chain_graph,
    classify,
    count_components,
    diagonal_model,
    gram_from_blocks,
    lisca_fingerprint,
    milnor_numbers,
    recover_k,
)
from .toricfan import (
    ChartExponentTable,
    ChartPullback,
    Fan,
    LaurentPoly,
    build_fan,
    chart_exponents,
    indeterminacy_count,
    pullback_chain,
    verify_chart_restrictions,
)
from .zeroseq import (
    IntegerMatrix,
    Triangulation,
    ZeroSequence,
    all_zero_sequences,
    block_matrix,
    catalan,
    continuant_matrix,
    cumsum_rows,
    enumerate_K,
    enumerate_triangulations,
    incidence_matrix,
    sign_incidence,
    triangulation_from_k,
    triangulation_to_k,
    weights_l,
)

__version__ = "0.1.0"
