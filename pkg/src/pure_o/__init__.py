"""Pure O-sequences: membership tests, explicit witnesses, and a search oracle."""

__version__ = "0.1.0"

from .classify import (
    FlatQuery,
    PartitionPlan,
    PQProfile,
    check_generator_shape,
    decide_flat,
    pq_profile,
    witness_flat,
    witness_socle2,
    witness_socle3,
)
from .decision import Decision
from .macaulay import MacaulayRep, is_o_sequence, macaulay_growth, macaulay_rep
from .monomial import Monomial, degree, divides, divisors_of_degree, format_monomial, parse_monomial, support
from .order_ideal import OrderIdeal, closure, h_vector, is_pure, maximal_elements, parse_hvector
from .search import (
    CatalogEntry,
    SearchLimits,
    canonical_form,
    decide_pure_o_sequence,
    enumerate_pure_hvectors,
    load_catalog,
    verify_theorem_range,
    write_catalog,
)
