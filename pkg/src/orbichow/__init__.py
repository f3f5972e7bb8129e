"""Exact orbifold Chow rings of weighted projective root stacks.

The ring is realized two independent ways: as a quotient of a deformed group
ring by derivation images, and as the Jacobian algebra of a potential on the
zero fiber of a one-parameter mirror fibration.  Both are computed with exact
rational arithmetic and must agree; the agreement is asserted.
"""

from .lattice import (
    InternalCheckError,
    Q,
    Vec,
    WeightVector,
    alpha,
    as_vec,
    as_weights,
    dual_kernel_basis,
    gamma,
    hermite_normal_form,
    in_alpha_image,
    same_cone,
    smith_invariant_factors,
    theta_value,
)
from .semigroup import (
    Lemma31Report,
    SGeneratorSet,
    TGeneratorSet,
    decompose_in_semigroup,
    realize_gamma,
    s_generators,
    t_generators,
    t_membership,
    verify_lemma31,
)
from .deformed import (
    DeformedElement,
    GradedQuotient,
    degree_nu,
    jacobian_generators,
    monomial_element,
    monomials_of_degree,
    multiply,
    orbifold_chow,
    xi_derivation,
)
from .fibration import (
    FiberedElement,
    FiberedMonomial,
    FibrationMaps,
    build_f,
    jacobian_algebra_zero_fiber,
    multiply_fibered,
    normalize_monomial,
    phi_star,
    phi_star_preimage,
    restrict_zero_fiber,
    t_monomial,
    xi_fibered,
    z_monomial,
)
from .presentation import (
    AffinePresentation,
    Relation,
    affine_embedding,
    chain_presentation,
    chow_presentation,
    is_chain_weights,
    mono,
    presentation_implies,
    presentations_equivalent,
    relation_implied,
    rewrites_to,
    verify_relation,
)
from .rescale import RescalePair, RescaleReport, chow_invariance, h_star, phi_star_scale, remainder_identity
from .properties import PropertyReport, run_property_suites
from .serialize import export, presentation_from_json, presentation_to_json, quotient_to_json

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
