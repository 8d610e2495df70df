"""Local statistics, Laplacian spectra and isoperimetry for bounded-degree graph sequences.

    from graphlimits import build_graph, misra_gries, census, moment_global, moment_local

Modules:
    graph         Graph type, BFS balls, vertex boundaries
    coloring      proper (d+1)-edge-colorings (Misra-Gries)
    census        rooted colored balls, canonical codes, censuses, TV distance
    spectral      Laplacian, spectra, s(G, delta), exact moments, histograms
    isoperimetry  Cheeger constants, good-set enumeration, packings
    generators    graph families with fixed colorings
    harness       sequence experiments
    cli           command-line entry point
"""

__version__ = "0.1.0"

from .census import (  # noqa: E402
    BallCensus,
    RootedBall,
    canonical_code,
    canonical_code_uncolored,
    census,
    extract_rooted_ball,
    tv_distance,
)
from .coloring import EdgeColoring, check_coloring, misra_gries, proper_edge_coloring  # noqa: E402
from .graph import (  # noqa: E402
    Graph,
    bfs_ball,
    build_graph,
    is_connected_induced,
    vertex_boundary,
)
from .isoperimetry import (  # noqa: E402
    GoodSet,
    GoodSetFamily,
    boundary_ratio,
    cheeger_exact,
    cheeger_sweep,
    coverable_fraction,
    enumerate_good_sets,
    pack_exact,
    pack_greedy,
)
from .spectral import (  # noqa: E402
    SpectralMeasure,
    ids_histogram,
    kolmogorov_distance,
    laplacian,
    moment_global,
    moment_local,
    root_moment,
    s_fraction,
    spectrum,
)
