"""Bottleneck analysis and delayed-CSIT scheme simulation for layered two-unicast networks."""

from .bottleneck import (
    BcModel,
    BottleneckCertificate,
    OmniscientCertificate,
    certificate_json,
    construct_degraded_bc,
    find_all_bottlenecks,
    find_bottlenecks,
    find_omniscient,
    is_cut,
    min_cut_subset,
    prior_bound,
    prune_parent_set,
)
from .engine import (
    SILENT,
    CleanRow,
    OwnSymbol,
    Reception,
    Reconstructed,
    SchemeProgram,
    Send,
    SimReport,
    SymbolSpace,
    achieved_dof,
    decode_check,
    program_from_json,
    program_json,
    reconstruct_row,
    run_scheme,
    simulate,
)
from .errors import (
    CapExceeded,
    CausalityViolation,
    DofbError,
    IllegalAction,
    IllegalReconstruction,
    IncompatibleBoundary,
    InternalInconsistency,
    InvalidParams,
    LayerMismatch,
    MismatchedDestination,
    MissingGain,
    OverlapError,
    ParseError,
    SchemeError,
    UnknownNode,
    UnknownRef,
    ValidationError,
)
from .families import Family, FamilyParams, gen_family, random_layered
from .network import (
    LayeredNetwork,
    concatenate,
    flip,
    natural_key,
    parents,
    parse_network,
    serialize_network,
    validate,
)
from .rank import (
    GainAssignment,
    RankReport,
    SupportPattern,
    draw_gains,
    field_rank,
    generic_rank,
    structural_rank,
    transfer_pattern,
)
from .region import (
    DofRegion,
    GapReport,
    HalfPlane,
    build_region,
    compare_bounds,
    expressible_by_bottleneck_bounds,
    in_S,
    region_csv,
    region_from_constraints,
    region_json,
    sum_dof,
)
from .schemes import (
    SchemeBundle,
    get_scheme,
    scheme_2d1d2,
    scheme_example1,
    scheme_example2,
    scheme_m_d1d2,
    scheme_two_bounds,
)

__version__ = "0.1.0"
