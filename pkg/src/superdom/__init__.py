"""Super domination in trees: exact solvers, tree families, subdivision and exhaustive checks."""

from .enumeration import all_trees, count_trees, trees_up_to
from .errors import (
    EdgeListParseError,
    GraphError,
    InstanceTooLargeError,
    NotATreeError,
    PreconditionError,
    SuperDomError,
    TheoremViolation,
    UndefinedParameterError,
)
from .families import (
    FamilyCertificate,
    certify,
    enumerate_family,
    is_member,
    recognize_T,
    recognize_U,
)
from .graph import (
    Graph,
    LabeledTree,
    VertexSet,
    canonical_form,
    corona,
    emit_edge_list,
    parse_edge_list,
    path_graph,
    star_graph,
    subdivide,
    tree_from_canonical,
)
from .harness import VerifyReport, verify, verify_all
from .kernels import backend_name, set_backend
from .solvers import (
    all_gamma_sp_sets,
    analyze_sp_set,
    gamma,
    gamma_sp,
    gamma_sp_witness,
    gamma_t,
    is_super_dominating,
)
from .subdivision import longest_path_pair_check, sd_gamma_sp, subdivision_number
from .transform import normalize_for_leaf

__version__ = "0.1.0"
