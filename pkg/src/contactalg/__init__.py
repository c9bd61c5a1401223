"""Finite-model workbench for contact algebras, clusters and their dual spaces."""

from .boolean import (
    BoolHom,
    FiniteBooleanAlgebra,
    enumerate_ultrafilters,
    hom_from_atom_map,
    left_adjoint,
    right_adjoint,
    validate_hom,
)
from .clusters import (
    clusters_bruteforce,
    clusters_via_ultrafilters,
    end_report,
    enlarge_witness,
    enumerate_clusters,
    infinity_and_bounded,
    is_cluster,
    sigma_of,
)
from .contact import (
    ContactStructure,
    LocalContactStructure,
    adjacency_algebra,
    alexandroff_extension,
    axiom_report,
    below,
    lca_axiom_report,
    overlap_algebra,
)
from .errors import BudgetError, ConsistencyError, ContactAlgError, InputError, PreconditionError
from .functors import (
    check_naturality,
    check_naturality_alg,
    psi_a_morphism,
    psi_a_object,
    psi_t_morphism,
    roundtrip,
    roundtrip_alg,
    t_embedding,
)
from .morphisms import classify_dual_morphism, classify_e_morphism, d_l, d_p
from .report import Report
from .topology import (
    FiniteSpace,
    SpaceMap,
    classify_map,
    make_space,
    point_cluster,
    rc_algebra,
    standard_lca,
)

__version__ = "0.1.0"

__all__ = [
    "BoolHom",
    "BudgetError",
    "ConsistencyError",
    "ContactAlgError",
    "ContactStructure",
    "FiniteBooleanAlgebra",
    "FiniteSpace",
    "InputError",
    "LocalContactStructure",
    "PreconditionError",
    "Report",
    "SpaceMap",
    "adjacency_algebra",
    "alexandroff_extension",
    "axiom_report",
    "below",
    "check_naturality",
    "check_naturality_alg",
    "classify_dual_morphism",
    "classify_e_morphism",
    "classify_map",
    "clusters_bruteforce",
    "clusters_via_ultrafilters",
    "d_l",
    "d_p",
    "end_report",
    "enlarge_witness",
    "enumerate_clusters",
    "enumerate_ultrafilters",
    "hom_from_atom_map",
    "infinity_and_bounded",
    "is_cluster",
    "lca_axiom_report",
    "left_adjoint",
    "make_space",
    "overlap_algebra",
    "point_cluster",
    "psi_a_morphism",
    "psi_a_object",
    "psi_t_morphism",
    "rc_algebra",
    "right_adjoint",
    "roundtrip",
    "roundtrip_alg",
    "sigma_of",
    "standard_lca",
    "t_embedding",
    "validate_hom",
]
