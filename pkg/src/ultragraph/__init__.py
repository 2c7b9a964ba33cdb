"""Exact invariants of ultragraph algebras from finite presentations.

The pipeline: describe an ultragraph (named vertices, countably infinite
witness blocks, edges with set-valued ranges), then compute the canonical
set algebra, the atom decomposition and quiver, K-theory, the admissible
pair lattice, and the Condition (K) verdict.
"""

from .atoms import (
    AtomTable,
    Quiver,
    build_quiver,
    closure_of_range,
    compute_atoms,
    export_dot,
    is_in_g0,
)
from .condition_k import (
    FirstReturnReport,
    VertexVerdict,
    condition_k,
    first_return_count,
    is_first_return_path,
)
from .ideals import (
    COMPLETE,
    PATTERN_SUBLATTICE,
    AdmissiblePair,
    G0Ideal,
    IdealLattice,
    empty_ideal,
    enumerate_admissible_pairs,
    full_ideal,
    ideal_contains,
    is_hereditary,
    is_saturated,
    join,
    make_ideal,
    meet,
    pair_leq,
    principal_ideal,
    quotient_regular_set,
    saturate_hereditary_closure,
)
from .ktheory import (
    BoundaryMatrix,
    KGroups,
    SelfCheckError,
    SmithDecomposition,
    ZGBasis,
    boundary_matrix,
    k_groups,
    smith_normal_form,
)
from .model import (
    INF,
    Edge,
    Infinite,
    Ultragraph,
    UniverseMismatchError,
    Vertex,
    VertexSet,
    VertexUniverse,
)
from .parser import (
    ParseError,
    SourceFile,
    import_digraph,
    import_exel_laca,
    parse_matrix,
    parse_ultragraph,
    pretty_print,
)

__version__ = "0.1.0"

__all__ = [
    "COMPLETE",
    "INF",
    "PATTERN_SUBLATTICE",
    "AdmissiblePair",
    "AtomTable",
    "BoundaryMatrix",
    "Edge",
    "FirstReturnReport",
    "G0Ideal",
    "IdealLattice",
    "Infinite",
    "KGroups",
    "ParseError",
    "Quiver",
    "SelfCheckError",
    "SmithDecomposition",
    "SourceFile",
    "Ultragraph",
    "UniverseMismatchError",
    "Vertex",
    "VertexSet",
    "VertexUniverse",
    "VertexVerdict",
    "ZGBasis",
    "boundary_matrix",
    "build_quiver",
    "closure_of_range",
    "compute_atoms",
    "condition_k",
    "empty_ideal",
    "enumerate_admissible_pairs",
    "export_dot",
    "first_return_count",
    "full_ideal",
    "ideal_contains",
    "import_digraph",
    "import_exel_laca",
    "is_first_return_path",
    "is_hereditary",
    "is_in_g0",
    "is_saturated",
    "join",
    "k_groups",
    "make_ideal",
    "meet",
    "pair_leq",
    "parse_matrix",
    "parse_ultragraph",
    "pretty_print",
    "principal_ideal",
    "quotient_regular_set",
    "saturate_hereditary_closure",
    "smith_normal_form",
]
