"""turanlab: spectral and clique-local inequality checks on graphs.

Graphs (bitmask adjacency, graph6 I/O, enumeration, G(n,p)), exact spectra
and walk counts, localized clique numbers, a catalogue of Turan / square
energy / two-eigenvalue / walk inequalities, simplex quadratic-form
maximization, and a deterministic batch scan engine.
"""

from .cliques import CliqueProfile, clique_profile, max_clique, triangle_count
from .graph import (
    Graph,
    bowtie,
    complete,
    complete_bipartite,
    complete_multipartite,
    cycle,
    diamond,
    disjoint_union,
    enumerate_labeled,
    from_graph6,
    is_connected,
    named,
    path,
    petersen,
    random_gnp,
    to_graph6,
)
from .inequalities import (
    CATALOGUE,
    GraphContext,
    InequalityResult,
    Tolerances,
    check,
    check_all,
    expand_check_ids,
    p_norm,
    weak_majorizes,
    weighted_edge_local_check,
)
from .motzkin import WeightScheme, maximize_simplex, quad_form
from .scanner import (
    EnumerationSource,
    Graph6Source,
    RandomSource,
    ScanOptions,
    ScanReport,
    extremal_search,
    random_experiment,
    scan,
)
from .spectra import Spectrum, WalkTable, eigenvalues, walk_counts, weighted_spectral_radius

__version__ = "0.1.0"
