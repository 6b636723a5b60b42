"""blockseq: block-monotone structure in sequences and point sets.

Subsequence extraction with positionally separated monotone blocks,
order-respecting partitioning of sequences and planar point sets,
transitive-style colorings with long block paths, mutually avoiding point
families, and low-crossing book layouts for ordered graphs.
"""

from .core import (
    INC,
    DEC,
    BlockWitness,
    InversionStats,
    Sequence,
    gen_clustered,
    gen_es_extremal,
    gen_random,
    inversion_stats,
    longest_monotone,
    validate_block_witness,
)
from .errors import (
    BlockseqError,
    BudgetExceededError,
    IndeterminateGeometryError,
    InvalidInputError,
    PreconditionError,
    SearchFailedError,
)
from .extract import (
    GappedChain,
    chain_to_blocks,
    default_c,
    extract_block_monotone,
    gapped_chain_dp,
    max_gapped_blocksize,
)
from .biarc import (
    BIARCS,
    UPPER_ARCS,
    ArcDrawing,
    OrderedGraph,
    Page,
    PagePartition,
    count_page_crossings,
    half_split,
    layout_page,
    paginate,
    partition_multiset,
    spine_crossing,
)
from .avoid import (
    AvoidingWitness,
    Line,
    balanced_line,
    check_avoiding,
    gen_grid_clusters,
    gen_point_cloud,
    mutually_avoiding_sets,
)
from .partition import (
    Configuration,
    LabeledPartition,
    Pattern,
    PointSet,
    flatten_deep,
    flatten_wide,
    greedy_partition,
    partition_point_set,
    partition_sequence,
    points_to_seq,
    pullout,
    seq_to_points,
    step_pattern,
    trim_exact,
    validate_configuration,
    validate_pattern,
    validate_point_witness,
)
from .rangecount import DominanceCounter, build_counter, count_open_box, is_gapped_pair
from .ramsey import (
    BlockPathWitness,
    PairColoring,
    coloring_from_sequence,
    depth1_block_path,
    find_block_path,
    gen_random_coloring,
    gen_recursive_coloring,
    longest_monochromatic_path,
    path_witness_to_blocks,
    validate_block_path,
)

__version__ = "0.1.0"

__all__ = [
    "INC",
    "DEC",
    "Sequence",
    "BlockWitness",
    "InversionStats",
    "GappedChain",
    "DominanceCounter",
    "BlockseqError",
    "InvalidInputError",
    "PreconditionError",
    "BudgetExceededError",
    "SearchFailedError",
    "IndeterminateGeometryError",
    "validate_block_witness",
    "longest_monotone",
    "inversion_stats",
    "gen_es_extremal",
    "gen_clustered",
    "gen_random",
    "build_counter",
    "count_open_box",
    "is_gapped_pair",
    "gapped_chain_dp",
    "chain_to_blocks",
    "extract_block_monotone",
    "max_gapped_blocksize",
    "default_c",
    "PointSet",
    "Configuration",
    "Pattern",
    "LabeledPartition",
    "seq_to_points",
    "points_to_seq",
    "pullout",
    "trim_exact",
    "validate_configuration",
    "validate_pattern",
    "validate_point_witness",
    "step_pattern",
    "flatten_wide",
    "flatten_deep",
    "partition_point_set",
    "partition_sequence",
    "greedy_partition",
    "PairColoring",
    "BlockPathWitness",
    "coloring_from_sequence",
    "gen_recursive_coloring",
    "gen_random_coloring",
    "longest_monochromatic_path",
    "depth1_block_path",
    "find_block_path",
    "validate_block_path",
    "path_witness_to_blocks",
    "Line",
    "AvoidingWitness",
    "balanced_line",
    "check_avoiding",
    "mutually_avoiding_sets",
    "gen_point_cloud",
    "gen_grid_clusters",
    "BIARCS",
    "UPPER_ARCS",
    "ArcDrawing",
    "OrderedGraph",
    "Page",
    "PagePartition",
    "count_page_crossings",
    "half_split",
    "layout_page",
    "paginate",
    "partition_multiset",
    "spine_crossing",
    "__version__",
]
