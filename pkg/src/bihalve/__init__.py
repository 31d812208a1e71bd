"""Block-interchange halving of duplicated linear genomes.

Computes the minimum number of block interchanges turning a duplicated
linear genome into a tandem-duplicated one, emits a provably optimal
scenario, and ships brute-force oracles to check both against.
"""

from .genome import (
    CIRCULAR,
    LINEAR,
    Adjacency,
    Chromosome,
    Genome,
    GenomeFormatError,
    InvalidGenomeError,
    MarkerOccurrence,
    ReductionMap,
    adjacencies,
    canonicalize_copies,
    expand_gap,
    format_genome,
    is_double_adjacency,
    is_perfectly_duplicated,
    is_tandem_duplicated,
    parse_genome,
    reduce_genome,
    validate_duplicated,
)
from .graph import (
    AdjacencyGraph,
    HalvingSummary,
    build_adjacency_graph,
    components_text,
    export_dot,
    halving_summary,
)
from .intervals import (
    INTERVAL_MIXED,
    INTERVAL_SELF_CONTAINED,
    INTERVAL_SPLIT,
    AdjacencyInterval,
    SortingPairError,
    classify_by_excision,
    classify_interval,
    compatible,
    find_sorting_pair,
    format_interval_table,
    induced_bi,
    interval_of,
    interval_set,
    interval_table,
    overlapping,
)
from .rearrange import (
    BIStep,
    DCJStep,
    InvalidStepError,
    Scenario,
    VerifyReport,
    apply_bi,
    apply_dcj,
    apply_dcj_make_double,
    apply_dcj_step,
    apply_scenario,
    bi_to_dcj_pair,
    format_steps,
    parse_scenario_steps,
    replay_scenario,
    scenario_json,
    verify_scenario,
)
from .solver import SolveResult, TraceEntry, final_bi, halve, solve_distance_only
from .oracle import (
    OracleConfig,
    SearchBudgetExceeded,
    bfs_bi_distance,
    bfs_dcj_tandem_distance,
    enumerate_genomes,
    random_duplicated,
    random_scrambled_tandem,
)

__version__ = "0.1.0"
