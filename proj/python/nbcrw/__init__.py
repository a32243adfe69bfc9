"""Non-backtracking centrality random walks on undirected graphs."""

from ._core import (
    Graph,
    HittingReport,
    NbCentrality,
    NbcrwError,
    WalkKind,
    __version__,
    complete_graph,
    cycle_graph,
    eigenvector_centrality,
    gen_ba,
    gen_er,
    gen_ws,
    hitting,
    hub_node,
    ipr,
    largest_component,
    make_rose,
    nb_centrality,
    rose_oracle,
    simulate_hitting,
    stationary,
    stationary_generic,
    transition,
    verify_b_vs_m,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
