"""Gluings, p-gluings and characteristic-p classification of affine
semigroups, with checkable certificates."""

__version__ = "0.1.0"

from .codim2 import (  # noqa: E402
    BinomialPair,
    Case,
    CaseKind,
    ClassificationReport,
    SimplicialCodim2,
    SupportRelation,
    classify,
    compute_alpha,
    compute_c_prime,
    compute_gT,
    compute_omega,
    emit_binomials,
    normalize,
    support_relation,
)
from .semigroup import (  # noqa: E402
    GeneratorSet,
    GluingCertificate,
    GluingStatus,
    Partition,
    check_gluing,
    check_p_gluing,
    complete_intersection_tree,
    completely_p_glued,
    extend_two_primes,
    is_free,
    nn_membership,
)
