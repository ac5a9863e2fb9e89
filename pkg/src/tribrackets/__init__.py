"""Finite tribrackets, region colorings of link diagrams, and their counting invariants."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .alexander import (
    AlexanderSpec,
    LaurentMatrix,
    LaurentPoly,
    alexander_tribracket,
    count_colorings_linear,
    presentation_matrix,
    specialize,
    unit_pairs,
)
from .classify import (
    ClassificationReport,
    classify,
    is_delta,
    is_delta_alexander,
    is_involutory,
    is_late_commutative,
)
from .coloring import (
    InvariantRecord,
    count_colorings,
    count_colorings_backtracking,
    elimination_plan,
    enumerate_colorings,
    invariant_table,
    iter_colorings,
)
from .core import (
    Axiom,
    AxiomViolation,
    FiniteTribracket,
    Flavor,
    Position,
    center_inverse,
    cyclic_group,
    dehn_tribracket,
    dumps_tensor,
    horizontal_to_vertical,
    left_inverse,
    load_tensor,
    loads_tensor,
    right_inverse,
    save_tensor,
    symmetric_group,
    verify,
    vertical_to_horizontal,
)
from .diagram import (
    Crossing,
    LinkTableEntry,
    PDCode,
    RegionDiagram,
    crossing_relation,
    link_diagram,
    link_names,
    link_table,
    load_link,
    parse_pd,
    pd_from_braid,
    regions,
)
from .errors import (
    AxiomError,
    BoundError,
    EmbeddingError,
    FlavorError,
    InvalidSpecError,
    ParseError,
    StructureError,
    TribracketError,
    UnderdeterminedError,
    UnknownLinkError,
)
from .search import SearchConfig, enumerate_tribrackets, is_isomorphic
from .snf import SnfResult, count_kernel_mod, smith_normal_form
