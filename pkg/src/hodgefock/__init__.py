"""Exact-arithmetic verification of Hodge calculus on finite Fock truncations.

Mixed tensor blocks (symmetric degree k, antisymmetric degree q) over R^d
with rational coefficients, the degree-shifting interchange operators
between them, and three machine-checked storylines: the Weitzenboeck
identity, the exactness and Hodge splitting of the induced complexes, and
the Gaussian (Hermite) polynomial model where the same operators act as
the Malliavin derivative and divergence.
"""

__version__ = "0.1.0"

from .chaos import (
    FormField,
    GradedFock,
    HermiteExpansion,
    Poly,
    chaos_field,
    chaos_poly,
    codifferential,
    commutation_defect,
    exp_vector,
    expectation,
    exterior_derivative,
    gaussian_inner,
    hermite,
    hodge_laplacian,
    ornstein_uhlenbeck,
)
from .errors import (
    ConfigError,
    DegreeOutOfRange,
    DimensionMismatch,
    InvalidIndex,
    NotInvariant,
)
from .fock_ops import (
    LinearMap,
    Permutation,
    alt_subset,
    gram_matrix,
    lower,
    operator_matrix,
    permute,
    raise_,
    sym_subset,
    symmetric_group,
)
from .hodge import (
    ExactnessReport,
    ExactnessRow,
    exactness_report,
    hodge_split,
    random_tensor,
    weitzenboeck_defect,
    witnesses,
)
from .rep_theory import (
    HookShape,
    Subspace,
    action_trace,
    embedded_subspace,
    hook_dim,
    intersect,
    orbit_span,
    orbit_split_dims,
    orbit_split_spaces,
    span_all_positions,
)
from .tensor_core import (
    FockTensor,
    FullTensor,
    MixedIndex,
    block_dim,
    embed,
    enum_basis,
    inner,
    inner_full,
    project_mixed,
)

__all__ = [
    "__version__",
    "ConfigError",
    "DegreeOutOfRange",
    "DimensionMismatch",
    "InvalidIndex",
    "NotInvariant",
    "MixedIndex",
    "FockTensor",
    "FullTensor",
    "enum_basis",
    "block_dim",
    "embed",
    "project_mixed",
    "inner",
    "inner_full",
    "Permutation",
    "symmetric_group",
    "permute",
    "sym_subset",
    "alt_subset",
    "lower",
    "raise_",
    "LinearMap",
    "operator_matrix",
    "gram_matrix",
    "weitzenboeck_defect",
    "hodge_split",
    "ExactnessRow",
    "ExactnessReport",
    "exactness_report",
    "witnesses",
    "random_tensor",
    "Subspace",
    "HookShape",
    "hook_dim",
    "orbit_span",
    "span_all_positions",
    "embedded_subspace",
    "intersect",
    "orbit_split_spaces",
    "orbit_split_dims",
    "action_trace",
    "Poly",
    "HermiteExpansion",
    "FormField",
    "GradedFock",
    "hermite",
    "chaos_poly",
    "chaos_field",
    "exp_vector",
    "exterior_derivative",
    "codifferential",
    "ornstein_uhlenbeck",
    "hodge_laplacian",
    "gaussian_inner",
    "expectation",
    "commutation_defect",
]
