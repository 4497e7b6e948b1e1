"""Finite *-semigroups, ordered groupoids with mediator, presheaves on the
left cancellative category of an inverse semigroup, and the adjunction
between them, with every structural claim backed by an executable check."""

from .core import (
    ClassificationReport,
    FiniteStarSemigroup,
    Relation,
    StarMorphism,
    check_morphism,
    classify,
    cod,
    dom,
    etale_lift,
    idempotent_leq,
    idempotents,
    is_etale,
    leq_left,
    leq_right,
    natural_order,
    projections,
    same_tables,
    validate_star_semigroup,
)
from .groupoid import (
    OrderedGroupoidWithMediator,
    esn_groupoid,
    esn_ordered_groupoid,
    esn_semigroup,
    extended_compose,
    mediator_kind,
    restrict,
    corestrict,
    validate_groupoid,
    validate_mediator,
)
from .site import (
    InverseSemigroup,
    LSMorphism,
    Presheaf,
    as_inverse,
    ls_morphisms,
    ls_pullback,
    representable_presheaf,
    representable_semigroup,
    representable_action,
    validate_presheaf,
)
from .topos import (
    GammaPresheaf,
    LambdaObject,
    counit,
    fiber_presheaf,
    gamma,
    ideal_correspondence,
    lam,
    lambda_morphism,
    left_compatible,
    m_iso,
    prop_inv_check,
    prop_sym_check,
    triangle_check,
    triangle_check2,
    unit,
)
from .ssets import (
    SSetStructure,
    balanced_check,
    canonical_action,
    left_action,
    make_sset,
    retwist,
    sset_to_semigroup,
)
from .modalg import (
    FHatAlgebra,
    FreeModule,
    SAlgebra,
    SModule,
    derived_product,
    fhat,
    gamma_algebra,
    idem_to_algebra,
    lift_morphism,
    rho,
    validate_algebra,
    validate_module,
)
from .oracle import (
    enumerate_semigroups,
    enumerate_star_structures,
    naive_check,
    standard_family,
)

__version__ = "0.1.0"
