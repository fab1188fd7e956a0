"""Very good functors, edge-path groupoids and their representations, computed exactly."""

from .complex import (
    MaximalTree, SimplicialComplex, barycentric_subdivision, close_under_faces,
    connected_components, maximal_tree, skeleton,
)
from .cover import CoverPoset, Zigzag, compose_zigzag, cover_intersection, cover_poset
from .exactla import Matrix, cokernel_projection, invert, kernel_basis
from .functor import (
    NaturalTransformation, VeryGoodFunctor, check_naturality, check_very_good, dualize,
    evaluate_inclusion, finite_limit, gauge_twist,
)
from .groupoid import (
    EdgePath, GroupoidFunctor, Pi1Presentation, Representation, concatenate,
    loop_to_generator_word, pi1_presentation, reduce_path, rep_evaluate, rep_validate,
    tree_path,
)
from .equivalence import (
    beta, lambda_rep, phi, phi_on_morphism, psi, psi_on_morphism, psi_path, roundtrip_report,
    theta,
)
from .bundle import (
    BundleMorphism, VeryGoodBundle, biproduct, bundle_monodromy, cokernel_bundle,
    iso_check_rank_one, kernel_bundle, mobius_fixture, mono_epi_check, rank_profile,
    zero_bundle,
)

__version__ = "0.1.0"
