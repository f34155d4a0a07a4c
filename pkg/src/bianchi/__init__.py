"""Exact-arithmetic toolkit for 3-dimensional Lie structures.

Candidate structures live as 3x3 rational matrices with four equivalent
faces (structure constants, bilinear form, linear 1-form, linear Poisson
bivector); everything up to the trajectory exporter is exact.
"""

from .classify import (
    BianchiType,
    GLTransform,
    act,
    b2_invariant,
    classify,
    signature_counts,
    sym_algebra_dim,
)
from .cohomology import (
    CohomologyReport,
    coboundary,
    cohomology_report,
    zeta_fiber_basis,
)
from .dynamics import (
    SolvableNormalForm,
    Trajectory,
    closed_form_trajectory,
    family_ode_matrix,
    hamiltonian_field,
    hexagon_starts,
    integrate_trajectory,
    to_solvable_form,
)
from .errors import (
    IncompatibleDirectionError,
    NotLieError,
    StratumCrossingError,
    UnsupportedFormError,
)
from .exalg import (
    Poly3,
    PolyForm,
    PolyMultiVector,
    Rational,
    dualize,
    exterior_d,
    lie_derivative,
    rat,
    schouten,
    wedge,
)
from .structures import (
    Disassembling,
    StructureTensor,
    alpha_tensor,
    compat_pairing,
    disassemble,
    half_square_tensor,
    is_compatible,
    is_lie,
    jacobi_form,
    jacobi_schouten,
    jacobi_structure_constants,
    skew_from_axial,
    sym_product_tensor,
)
from .variety import (
    CompatibilityVariety,
    DeformationPath,
    StratReport,
    Stratum,
    compatibility_variety,
    deform,
    is_contraction,
    normalize,
    strat_report,
    zeta_fiber_dim,
)

__version__ = "0.1.0"
