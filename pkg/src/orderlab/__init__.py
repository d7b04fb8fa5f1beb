"""orderlab: exact order combinatorics, ordered Grothendieck groups, and a
finite matrix model for the algebras a finite poset generates."""

__version__ = "0.1.0"

from .posets import (
    Poset,
    make_poset,
    maximal_chains,
    lower_closure,
    upper_closure,
    lower_sets,
    is_downward_directed,
    has_coinitial_chain,
    coinitial_family_condition,
    krull_filtration,
    is_finitely_sheltered,
)
from .algebra import (
    full_algebra,
    ideal_lattice,
    socle_series,
    loewy_length,
    is_prime,
    is_primitive,
    primitive_spectrum,
    k0_model,
    structure_report,
)
from .hahn import (
    HahnElement,
    element,
    basis,
    is_positive,
    leq,
    order_unit,
    check_interpolation,
    check_riesz,
    check_unperforation,
    check_conical,
    is_prime_element,
    group_ideal_lattice,
)
from .truncation import (
    TruncationSpace,
    build_space,
    SparseMat,
    indicator,
    matrix_unit,
    inflate,
    deflate,
    in_inflated_algebra,
    localize,
    delocalize,
    in_local_algebra,
    transport,
    unit_check,
    independence_probe,
)
from .maps import (
    PosetMap,
    map_diagnosis,
    is_upper_embedding,
    push_forward,
    pull_back,
    cone_preservation,
    associated_graph,
    graph_map_of,
    is_strict_ck,
    algebra_map,
    algebra_comap,
    naturality_check,
)
from .fixtures import fixture, fixture_names

__all__ = [
    "Poset",
    "make_poset",
    "maximal_chains",
    "lower_closure",
    "upper_closure",
    "lower_sets",
    "is_downward_directed",
    "has_coinitial_chain",
    "coinitial_family_condition",
    "krull_filtration",
    "is_finitely_sheltered",
    "full_algebra",
    "ideal_lattice",
    "socle_series",
    "loewy_length",
    "is_prime",
    "is_primitive",
    "primitive_spectrum",
    "k0_model",
    "structure_report",
    "HahnElement",
    "element",
    "basis",
    "is_positive",
    "leq",
    "order_unit",
    "check_interpolation",
    "check_riesz",
    "check_unperforation",
    "check_conical",
    "is_prime_element",
    "group_ideal_lattice",
    "TruncationSpace",
    "build_space",
    "SparseMat",
    "indicator",
    "matrix_unit",
    "inflate",
    "deflate",
    "in_inflated_algebra",
    "localize",
    "delocalize",
    "in_local_algebra",
    "transport",
    "unit_check",
    "independence_probe",
    "PosetMap",
    "map_diagnosis",
    "is_upper_embedding",
    "push_forward",
    "pull_back",
    "cone_preservation",
    "associated_graph",
    "graph_map_of",
    "is_strict_ck",
    "algebra_map",
    "algebra_comap",
    "naturality_check",
    "fixture",
    "fixture_names",
    "__version__",
]
