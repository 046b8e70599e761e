"""Fundamental cycles, blow-down towers and T1/T2 dimension totals for rational surface singularities."""

from .correction import CStatus, annotate, c2_formula, correction_term, is_central_minus_two_family
from .enumerate import SearchParams, enumerate_trees, minimal_multiplicity_example, search, search_c_positive
from .errors import DomainError, GraphError, IdentityFailure, NotNegativeDefinite, NotRational, ParseError
from .fundamental import (
    ComputationSequence,
    NumericInvariants,
    computation_sequence,
    fundamental_cycle,
    fundamental_cycle_oracle,
    is_rational,
    numeric_invariants,
)
from .graph import (
    Cycle,
    DualGraph,
    arithmetic_genus,
    build_graph,
    canonical_pair,
    induced_subgraph,
    is_negative_definite,
    pair,
)
from .invariants import (
    InvariantsReport,
    analyze,
    assemble_report,
    chi_oz_2z,
    chi_theta_z,
    expected_betti,
    lemma_e4_check,
    minus_two_count,
)
from .tower import TowerNode, blow_down_children, build_tower, i4_sums

__version__ = "0.1.0"
