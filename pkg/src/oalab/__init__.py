"""oalab: finite orthoalgebras, test spaces, and finite topological checks."""

from .core import (
    ClassificationReport,
    FiniteOrthoalgebra,
    MackeyTriple,
    OmpEquivalenceReport,
    blocks,
    boolean_blocks,
    build_oa,
    center,
    center_subalgebra,
    central_decomposition,
    classify,
    comp_of,
    dimension,
    height,
    horizontal_sum_gen,
    interval,
    is_central,
    is_isomorphic,
    is_jointly_orthogonal,
    join,
    mackey,
    mackey_set,
    meet,
    omp_equivalence_report,
    ominus,
    osum_event,
    product,
    validate_oa_table,
)
from .states import (
    State,
    convex_combination,
    is_order_determining,
    is_state,
    state_vertices,
    vertex_certificate,
)
from .testspace import (
    LogicQuotient,
    RoundTrip,
    TestSpace,
    canonical_testspace,
    complements_of,
    event_relations,
    events,
    is_algebraic,
    logic,
    make_testspace,
    representation_roundtrip,
    summable_subsets,
)
from .topology import (
    FiniteTopology,
    ToaReport,
    alexandrov_upsets,
    check_toa,
    discrete,
    indiscrete,
    is_closed_relation,
    is_continuous,
    is_stably_complemented,
    is_stably_ordered,
    is_topology,
    make_topology,
    ominus_continuous,
    open_sum_equivalence,
    opens_osum,
    product_topology,
    totally_nonorthogonal_cover,
    upset,
    vietoris,
)
from .intervals import (
    RationalIntervalSet,
    iset,
    iv_is_closed,
    iv_is_open,
    iv_le,
    iv_oplus,
    iv_upset,
    two_interval_carrier,
)
from .projections import (
    Projection,
    VectorState,
    faithful_subeffect_check,
    meet_discontinuity_witness,
    proj_from_span,
    proj_leq,
    proj_meet,
    proj_oplus,
    proj_perp,
    projection,
    random_projection,
    rank_separation_check,
    vector_state,
)
from . import catalog, errors

__all__ = [n for n in dir() if not n.startswith("_")]
