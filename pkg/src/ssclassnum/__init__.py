"""Class numbers of imaginary quadratic fields Q(sqrt(-p)) computed by
counting supersingular j-invariants over F_p, with independent oracles
(reduced binary quadratic forms, elliptic-curve point counts, Hilbert
class polynomial roots) for cross-validation.
"""

from .arith import (
    Factorization,
    SqrtSolutionSet,
    all_sqrts_mod,
    as_perfect_square,
    factorize,
    is_prime,
    isqrt,
    kronecker,
    sqrt_mod_prime,
)
from .classnum import (
    ClassNumberReport,
    algorithm1,
    algorithm2,
    algorithm3,
    qualifying_discriminants,
)
from .classpoly import ClassPolynomial, class_polynomial, j_at_form, roots_mod_p
from .genus import (
    DiscriminantRecord,
    RealGenusField,
    classify,
    real_genus_generators,
    splits_completely,
)
from .oracles import (
    ReducedForm,
    forms_class_number,
    supersingular_count,
    supersingular_set,
)
from .pairing import PairWitness, pair_count_for, total_pair_count

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "SqrtSolutionSet",
    "all_sqrts_mod",
    "as_perfect_square",
    "factorize",
    "is_prime",
    "isqrt",
    "kronecker",
    "sqrt_mod_prime",
    "ClassNumberReport",
    "algorithm1",
    "algorithm2",
    "algorithm3",
    "qualifying_discriminants",
    "ClassPolynomial",
    "class_polynomial",
    "j_at_form",
    "roots_mod_p",
    "DiscriminantRecord",
    "RealGenusField",
    "classify",
    "real_genus_generators",
    "splits_completely",
    "ReducedForm",
    "forms_class_number",
    "supersingular_count",
    "supersingular_set",
    "PairWitness",
    "pair_count_for",
    "total_pair_count",
    "__version__",
]
