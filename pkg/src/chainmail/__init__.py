"""Finite order-theory toolkit for point-free connectivity.

The package machine-checks a small theory: connectivity inside complete
lattices, the posets of connected pieces that arise from it, the passage
back and forth between the two pictures, and exhaustive counts of the
finite structures involved.
"""

from .errors import (
    AxiomViolation,
    ChainmailError,
    CycleDetected,
    EmptyInput,
    NotAChainmail,
    NotALattice,
    SizeBudgetExceeded,
    TheoremViolation,
)
from .poset import (
    Poset,
    canonical_form,
    covers,
    from_json_dict,
    is_isomorphic,
    join_of,
    meet_of,
    to_dot,
    to_json_dict,
    validate_poset,
)
from .lattice import (
    CONDITIONS,
    CompleteLattice,
    as_complete_lattice,
    check_condition,
    connected_elements,
    is_chained,
    is_locally_connected,
    is_separated,
    nu_classification,
    separation_poset,
    star,
)
from .mails import (
    Chainmail,
    as_chainmail,
    d_lattice,
    is_mail,
    mail_components,
    poset_is_chainmail,
    subchainmail_generated,
    x_star,
)
from .category import (
    PosetMap,
    check_naturality,
    check_triangle_identities,
    compose,
    counit_epsilon,
    d_on_morphism,
    identity_map,
    is_epsilon_iso,
    k_chainmail,
    k_on_morphism,
    right_adjoint,
    unit_eta,
    validate_map,
)
from .sources import (
    ConnectivitySpace,
    FiniteTopology,
    Graph,
    Hypergraph,
    chainmail_from_connectivity_space,
    chainmail_from_graph,
    chainmail_from_hypergraph,
    chainmail_from_topology,
    counterexample_chainmail,
    downset_lattice,
    powerset_lattice,
    search_connectivity_representation,
)
from .enumeration import (
    EnumerationTask,
    count_chainmails,
    emit_catalog,
    enumerate_posets,
)
from .verify import SUITES, check_adjunction_bijection, run_suite

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation",
    "CONDITIONS",
    "Chainmail",
    "ChainmailError",
    "CompleteLattice",
    "ConnectivitySpace",
    "CycleDetected",
    "EmptyInput",
    "EnumerationTask",
    "FiniteTopology",
    "Graph",
    "Hypergraph",
    "NotAChainmail",
    "NotALattice",
    "Poset",
    "PosetMap",
    "SUITES",
    "SizeBudgetExceeded",
    "TheoremViolation",
    "as_chainmail",
    "as_complete_lattice",
    "canonical_form",
    "chainmail_from_connectivity_space",
    "chainmail_from_graph",
    "chainmail_from_hypergraph",
    "chainmail_from_topology",
    "check_adjunction_bijection",
    "check_condition",
    "check_naturality",
    "check_triangle_identities",
    "compose",
    "connected_elements",
    "counit_epsilon",
    "count_chainmails",
    "counterexample_chainmail",
    "covers",
    "d_lattice",
    "d_on_morphism",
    "downset_lattice",
    "emit_catalog",
    "enumerate_posets",
    "from_json_dict",
    "identity_map",
    "is_chained",
    "is_epsilon_iso",
    "is_isomorphic",
    "is_locally_connected",
    "is_mail",
    "is_separated",
    "join_of",
    "k_chainmail",
    "k_on_morphism",
    "mail_components",
    "meet_of",
    "nu_classification",
    "poset_is_chainmail",
    "powerset_lattice",
    "right_adjoint",
    "run_suite",
    "search_connectivity_representation",
    "separation_poset",
    "star",
    "subchainmail_generated",
    "to_dot",
    "to_json_dict",
    "unit_eta",
    "validate_map",
    "validate_poset",
    "x_star",
]
