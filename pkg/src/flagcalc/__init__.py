"""Exact flag algebra calculus over finite simple graphs."""
from .density import (
    chain_decompose,
    density,
    labelled_density,
    labelled_split_density,
    split_density,
)
from .flags import (
    Flag,
    enumerate_flags,
    is_embedding,
    make_type,
    q_coefficient,
    tau_isomorphic,
)
from .graphs import (
    Graph,
    automorphism_count,
    canonical_form,
    complement,
    enumerate_graphs,
    induced,
    is_isomorphic,
    parse_graph,
)

__version__ = "0.1.0"
