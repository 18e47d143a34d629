"""Exact desk-scale toolkit for extremal problems on tournaments.

Subpackages by concern:

* :mod:`tourkit.digraphs` -- oriented graphs, tournaments, densities,
  embedding counts, reversal distance, transitive extraction;
* :mod:`tourkit.coloring` -- acyclic k-coloring, the NAE-based
  tournament 2-coloring solver, the easy/hard classifier;
* :mod:`tourkit.orderedhom` -- backedge graphs, order-preserving
  homomorphisms, ordered cores and the maximal-core selection;
* :mod:`tourkit.forcing` -- the k-partite forcing construction, tuple
  collections, completion certification, exhaustive forcing checks;
* :mod:`tourkit.regularity` -- binary-matrix homogeneity audits, ordered
  submatrix counting, the conditional partitioner and the decomposition
  pipeline;
* :mod:`tourkit.lowerbound` -- progression-free sets, clique-decomposable
  base graphs, the blow-up instance and its two audits;
* :mod:`tourkit.hardness` -- the 7-vertex gadget, the triangle-free-cut
  reduction and the colorability lift;
* :mod:`tourkit.formats` -- text formats with line-numbered errors;
* :mod:`tourkit.cli` -- the batch command-line front door.
"""

from .digraphs import (
    DistanceResult,
    Embedding,
    OrientedGraph,
    PairStats,
    Tournament,
    count_embeddings,
    density,
    distance_to_h_free,
    embedding_stats,
    transitive_subtournament,
)
from .coloring import (
    Coloring,
    acyclic_k_coloring,
    chromatic_number,
    classify,
    nae_two_coloring,
    smallest_non_two_colorable_tournament,
)
from .errors import AuditError, BudgetExceeded
from .forcing import (
    KPartiteTournament,
    TupleCollection,
    build_forcing,
    certify_completion,
    disjoint_tuples,
    forces_exhaustive,
    forcing_parameters,
    search_min_forcing,
)
from .hardness import (
    check_reduction,
    gadget,
    has_triangle_free_cut,
    lift,
    reduce_graph,
    verify_gadget,
)
from .lowerbound import (
    BehrendSet,
    BlowupTournament,
    RSGraph,
    audit_copy_localization,
    behrend,
    blowup_tournament,
    farness_certificate,
    rs_graph,
)
from .orderedhom import (
    CoreFamily,
    LabeledGraph,
    OphMap,
    backedge_graph,
    core_family,
    find_oph,
    odd_cycle_certificate,
    ordered_core,
    select_k,
)
from .regularity import (
    BinaryMatrix,
    Equipartition,
    StrongDecomposition,
    afn_partition,
    audit_bipartition,
    count_matrix_copies,
    refine_to_equipartition,
    strong_decomposition,
)

__version__ = "0.1.0"
