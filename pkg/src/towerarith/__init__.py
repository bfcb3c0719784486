"""Integers and rationals as prime-exponentiation towers."""
from .codec import UniPolynomial, contains_prime, to_polynomial
from .errors import (
    CanonicalError,
    DomainError,
    DuplicateGenerated,
    EvaluationOverflow,
    NonRepresentable,
    NotApplicable,
    NotFound,
    NotPerfectSquare,
    TowerError,
    TowerSyntaxError,
)
from .textio import format_polytower, format_tower, parse, parse_polytower, parse_tower
from .tower import (
    ONE,
    UNIT,
    Factor,
    Ordering,
    Polytower,
    Tower,
    compare,
    decode,
    encode,
    encode_rational,
    evaluation_cap,
    multiply,
    poly_add,
    poly_mul,
    raiser,
)

__version__ = "0.1.0"
