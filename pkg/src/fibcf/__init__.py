"""Exact arithmetic for Fibonacci continued fractions.

Constructs the numbers xi_{a,b} whose partial quotients follow the
Fibonacci word on two distinct positive integers, builds their extremal
simultaneous-approximation triples, and measures the associated
approximation laws with guaranteed rational-interval enclosures.
"""

from . import words
from .backend import BACKEND, mpq, mpz
from .cf import (
    ApproxTriple,
    ConvergentPair,
    XiApprox,
    convergent,
    get_xi,
    partial_quotients,
    triple_direct,
    triple_sequence,
    triple_via_word,
    xi_enclosure,
)
from .errors import ResourceLimitError, UndecidedError
from .exact import (
    Mat2,
    Params,
    RatInterval,
    golden_ratio,
    interval_add,
    interval_mul,
    interval_pow,
    interval_sub,
    mat_mul,
    nearest_int_distance,
    phi,
)
from .growth import (
    CubeRow,
    GrowthRow,
    cube_experiment,
    exp_enclosure,
    fit_constants,
    gamma_enclosure,
    log_enclosure,
    growth_table,
)
from .search import (
    AlgebraicCandidate,
    RootBox,
    SimulResult,
    best_algebraic,
    best_rational,
    best_simultaneous,
    closest_root,
    enumerate_candidates,
    height_of_rational,
    interval_sqrt,
)
from .words import (
    fib,
    fib_word_prefix,
    is_palindrome,
    palindromic_prefix,
    separator,
    word_term,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "mpq",
    "mpz",
    "ApproxTriple",
    "ConvergentPair",
    "XiApprox",
    "convergent",
    "get_xi",
    "partial_quotients",
    "triple_direct",
    "triple_sequence",
    "triple_via_word",
    "xi_enclosure",
    "ResourceLimitError",
    "UndecidedError",
    "Mat2",
    "Params",
    "RatInterval",
    "golden_ratio",
    "interval_add",
    "interval_mul",
    "interval_pow",
    "interval_sub",
    "mat_mul",
    "nearest_int_distance",
    "phi",
    "CubeRow",
    "GrowthRow",
    "cube_experiment",
    "exp_enclosure",
    "fit_constants",
    "gamma_enclosure",
    "log_enclosure",
    "growth_table",
    "AlgebraicCandidate",
    "RootBox",
    "SimulResult",
    "best_algebraic",
    "best_rational",
    "best_simultaneous",
    "closest_root",
    "enumerate_candidates",
    "height_of_rational",
    "interval_sqrt",
    "words",
    "fib",
    "fib_word_prefix",
    "is_palindrome",
    "palindromic_prefix",
    "separator",
    "word_term",
]
