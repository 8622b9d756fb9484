"""Finite groups, non-commuting graphs, AC-group classification, and the
arithmetic feasibility systems tying graph-isomorphic pairs together."""

from .catalog import (
    Catalog,
    CatalogEntry,
    PairRecord,
    PairReport,
    check_theorems,
    find_graph_pairs,
    generate_catalog,
    verify_theorems,
)
from .classify import (
    ACClassification,
    FrobeniusData,
    NilpotentACProfile,
    PGroupLemmaReport,
    classify,
    detect_frobenius_quotient,
    is_solvable,
    nilpotent_ac_profile,
    verify_pgroup_lemma,
)
from .construct import (
    build_from_spec,
    build_group,
    load_cayley_file,
    parse_spec,
    render_spec,
    write_cayley_file,
)
from .diophantine import (
    Type1Bounds,
    Type1Tuple,
    Type3Bounds,
    Type3Tuple,
    check_type1,
    check_type3,
    enumerate_type1,
    enumerate_type3,
    verify_claims_type1,
    verify_claims_type3,
)
from .graph import (
    CentralizerPartition,
    GraphSignature,
    NonCommutingGraph,
    SimpleGraph,
    build_graph,
    centralizer_partition,
    clique_number,
    graph_iso_general,
    is_ac,
    is_complete_multipartite,
    iso_ac,
    signature,
    verify_clique_formula,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    derived_subgroup,
    direct_product,
    is_isomorphic,
    is_nilpotent,
    is_normal,
    nilpotency_class,
    quotient,
    subgroup_generated,
    upper_central_series,
    validate_group,
)

__version__ = "0.1.0"
