"""Numerical tensor algebra for real hypersurfaces of the complex quadric.

The package builds algebraic models of a tangent space of the complex
quadric (metric, complex structure, circle of real conjugations), induces
the almost contact structure of a real hypersurface from a unit normal,
evaluates the associated curvature and star-Ricci tensors, and runs
seeded feasibility searches over shape-operator data.
"""

__version__ = "0.1.0"

from .algebra import (
    MinimizeResult,
    MultistartResult,
    minimize_residual,
    multistart,
    solve_least_squares,
    sym_eigendecompose,
)
from .quadric import (
    ConjugationOperator,
    QuadricModel,
    build_model,
    conjugation_at,
    model_invariant_report,
)
from .hypersurface import (
    CanonicalGauge,
    Frame,
    JetData,
    NormalType,
    ShapeOperator,
    canonicalize_conjugation,
    classify_normal,
    extend_jet,
    induce_frame,
    shape_isometric_reeb_soliton,
    shape_random,
    shape_random_hopf,
    shape_solve_hopf,
)
from .tensors import (
    BilinearForm,
    ResidualReport,
    commutator_residuals,
    curvature,
    hopf_residual,
    lie_xi_metric,
    parallel_star_ricci_residual,
    soliton_residual,
    star_ricci_closed,
    star_ricci_closed_defect,
    star_ricci_trace,
    sup_norm_tangent,
)
from .chains import (
    ChainConfig,
    ChainReport,
    Constraint,
    ConstraintSet,
    SearchReport,
    StepReport,
    infeasibility_search,
    run_commuting_chain,
    run_parallel_chain,
    run_soliton_chain,
)
from .reports import (
    ReportEnvelope,
    dumps_canonical,
    emit_report,
    has_failure,
    make_envelope,
)

__all__ = [
    "MinimizeResult",
    "MultistartResult",
    "minimize_residual",
    "multistart",
    "solve_least_squares",
    "sym_eigendecompose",
    "ConjugationOperator",
    "QuadricModel",
    "build_model",
    "conjugation_at",
    "model_invariant_report",
    "CanonicalGauge",
    "Frame",
    "JetData",
    "NormalType",
    "ShapeOperator",
    "canonicalize_conjugation",
    "classify_normal",
    "extend_jet",
    "induce_frame",
    "shape_isometric_reeb_soliton",
    "shape_random",
    "shape_random_hopf",
    "shape_solve_hopf",
    "BilinearForm",
    "ResidualReport",
    "commutator_residuals",
    "curvature",
    "hopf_residual",
    "lie_xi_metric",
    "parallel_star_ricci_residual",
    "soliton_residual",
    "star_ricci_closed",
    "star_ricci_closed_defect",
    "star_ricci_trace",
    "sup_norm_tangent",
    "ChainConfig",
    "ChainReport",
    "Constraint",
    "ConstraintSet",
    "SearchReport",
    "StepReport",
    "infeasibility_search",
    "run_commuting_chain",
    "run_parallel_chain",
    "run_soliton_chain",
    "ReportEnvelope",
    "dumps_canonical",
    "emit_report",
    "has_failure",
    "make_envelope",
]
