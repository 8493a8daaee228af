"""kmon: symbolic algebra for commutative monoids with infinite summation.

Extended-cardinal arithmetic, constraint-defined monoids with universal
extension along the cardinal chain, braiding certificates with verification
and search, and realizability deciders for two-generated monoids.
"""

from .cardinals import (
    ALEPH0,
    CardBoundMode,
    ExtCard,
    ZERO,
    aleph,
    at_most,
    below,
    card_leq,
    card_mul,
    card_sum,
    fin,
    kappa_card,
    max_aleph_level,
    parse_card,
    render_card,
    set_finite_width,
    set_max_aleph_level,
)
from .core import (
    CyclicExtensionMonoid,
    CyclicMonoid,
    Family,
    KappaMonoid,
    absorb_big,
    flatten,
    in_add as in_add_monoid,
    is_reduced_witness,
    ksum,
    order_unit_check,
    scalar,
    size_of,
)
from .laws import LawReport, check_axioms
from .free_vectors import CardVec, VecMonoid, free_extend_hom, vec_ksum
from .diophantine import (
    Aleph0Extension,
    ConstraintSystem,
    DioMonoid,
    aleph0_extend_finite,
    decompose,
    enumerate_solutions,
    is_saturated,
    member,
    recombine,
    universal_extend,
)
from .braiding import (
    BraidBlock,
    CollapsedCertificate,
    LayeredCertificate,
    OmegaCertificate,
    braid_find,
    compose,
    flip,
    flip_any,
    telescope,
    verify,
)
from .presentations import (
    Form,
    TwoGenMonoid,
    TwoGenPresentation,
    corollary_checks,
    forms_equal,
    in_add,
    realizable_two_gen,
    replay_chain,
)
from .gallery import (
    DedekindVMonoid,
    HNPInfiniteVec,
    HNPPredicate,
    QPoint,
    RationalLineMonoid,
    TrivialExtensionMonoid,
    dedekind_sum,
    hnp_member,
    line_sum,
    trivial_sum,
)
from .dsl import parse_dsl, render_dsl
from .tribool import TriBool, no, unknown, yes

__version__ = "0.1.0"
