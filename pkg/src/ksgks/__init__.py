"""Kochen-Specker and generalized Kochen-Specker proof toolkit.

Builds the canonical ray sets (24-cell, dual, Peres-24, the 18-ray set,
hexagon qubit states) and their basis/POVM covers; certifies
noncolorability by parity and by complete search; analyzes criticality
under element deletion; exports DIMACS CNF; and generates the spin-j,
n-direction POVM family with its binomial parity conditions.
"""

from .algebra import (
    TOL_HERM,
    TOL_ID,
    TOL_ORTHO,
    dot,
    is_identity,
    projector,
    weighted_sum,
)
from .catalog import builtin_cover, builtin_rayset
from .cnf import CnfFormula, DimacsError, export_cnf, parse_dimacs, solve_cnf, verify_model
from .coloring import (
    DROP_CONTEXT,
    SAT,
    SHRINK_CONTEXT,
    UNSAT,
    CriticalityReport,
    SearchResult,
    criticality_report,
    exhaustive_oracle,
    search_assignment,
)
from .covers import (
    CompletenessError,
    Context,
    CoverError,
    CoverStructure,
    ParityCertificate,
    build_gks_cover,
    build_ks_cover,
    enumerate_bases,
    orthogonality_graph,
    parity_certificate,
)
from .rays import (
    Ray,
    RaySet,
    build_18ray,
    build_24cell_rays,
    build_dual_24cell_rays,
    build_hexagon_rays,
    build_peres24,
    canonicalize,
    inscribed_tesseracts,
)
from .spin import (
    Direction,
    SpinConstructionParams,
    construction_params,
    find_parity_params,
    generate_gks,
    spin_states,
    wigner_small_d,
)

__version__ = "0.1.0"
