"""Exact analysis of contextuality and non-locality in empirical models."""

from .fraction import (
    Decomposition,
    FractionResult,
    NotContextualError,
    contextual_fraction,
    decompose,
    membership_nc,
    noncontextual_fraction,
    witness_inequality,
)
from .inequality import BellInequality, algebraic_bound, is_bell_inequality, is_tight, normalized_violation
from .logic import (
    ContextualizedFormula,
    check_logical_bell,
    event_probability,
    k_consistency,
    logical_bell_inequality,
    parse,
)
from .lp import LPProblem, LPSolution, solve
from .model import (
    EmpiricalModel,
    SignallingError,
    check_compatibility,
    deterministic_model,
    incidence_matrix,
    make_model,
    marginalize,
    mix,
    vectorize,
)
from .polytope import (
    CorrelationPolytopeSpec,
    LinearSystem,
    correlation_membership,
    fm_eliminate,
    nc_polytope_facets,
    nontrivial_facets,
    remove_redundant,
)
from .possibilistic import Classification, classify, consistent_globals, support_of
from .quantum import PlanarMeasurement, born_model, rationalize
from .scenario import Scenario, bell_scenario, global_assignments, local_index, make_scenario

__version__ = "0.1.0"
