"""Root of the `critsets` package.

Critical and defining sets of (0,1)-matrices with prescribed row and column
sums. Imports the public API of every module, so you should only really need
to import this.
"""

# NOTE  Package-level re-exports. Besides giving one flat namespace, this keeps
#       PyLance quiet, which does not like import splats:
#
#           Wildcard import from a library not allowed
#           Pylance(reportWildcardImportFromLibrary)
#
#       The command line lives in `critsets.cli` and is not re-exported.
#
from critsets.errors import (
    CritSetsError,
    MatrixError,
    ParseError,
    CompletionError,
    NoCompletion,
    AmbiguousCompletion,
    BudgetError,
    BudgetExhausted,
    TradeError,
    WalkError,
    GuardExceeded,
    CertificateError,
)
from critsets import lib, log
from critsets.core import (
    Entry,
    ZERO,
    ONE,
    EMPTY,
    MarginSpec,
    ClassSpec,
    PartialMatrix,
    validate,
    is_complete,
    subset_of,
    permute,
    identity,
    as_permutation,
    invert,
    parse,
    parse_text,
    parse_json,
    serialize,
    serialize_json,
    render,
)
from critsets.completion import (
    CompletionBudget,
    UNLIMITED,
    gale_ryser,
    propagate_forced,
    CompletionSearch,
    count_completions,
    enumerate_completions,
    complete_unique,
    count_class,
)
from critsets.trades import (
    Trade,
    Cycle,
    is_cycle,
    trade_between,
    decompose_cycles,
    find_cycle_through,
    iter_cycles,
    apply_trade,
)
from critsets.walks import (
    Walk,
    BlockStructure,
    WalkCertificate,
    MAX_CERTIFICATE_ORDER,
    walk_from_points,
    cell_above,
    block_structure,
    induced_defining_set,
    verify_handier,
    normalize,
    search_walk_certificate,
    complement_walk,
    walk_certificates,
)
from critsets.defsets import (
    CertifiedCriticalSet,
    is_defining,
    is_critical,
    is_critical_by_cycles,
    minimize_to_critical,
    certify,
    complement_defining,
    complement_of,
)
from critsets.fixtures import (
    Fixture,
    fixture_names,
    fixture_path,
    load_fixture,
)
from critsets.compositions import (
    CompositionPair,
    iter_compositions,
    iter_alternating,
    iter_b_pairs,
    b_critical_size,
    b_critical_sizes,
    b_max_critical,
    b_maximizers,
    b_special_pair,
)
from critsets.constructions import (
    identity_2x2,
    build_X,
    critical_X,
    build_Y,
    critical_Y,
    y_walk,
    build_M_k,
    trade_index_set,
    FamilyTrade,
    trade_family,
    spectrum_upper,
    spectrum_sources,
    spectrum_member,
    spectrum,
    sup_pair,
    interleave,
    build_B,
    b_realize,
)
from critsets.extremal import (
    MAX_CLASS_ORDER,
    MAX_SCS_ORDER,
    MAX_LCS_ORDER,
    Witness,
    ExtremalReport,
    enumerate_class,
    orbit_key,
    smallest_certificate,
    scs_of,
    largest_critical_set,
    lcs_of,
    critical_sets_of,
    scs_by_subsets,
    lcs_by_subsets,
    class_report,
)
from critsets.json import JSONEncoder
