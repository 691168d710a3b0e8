"""Exact symmetric functions, their three products and coproducts, and
random walks on states of the ring driven by those coproducts."""

from .partitions import (
    DegreeCapError,
    Partition,
    conjugate,
    content_matrix,
    get_degree_cap,
    hook_matrix,
    n_of,
    partitions_of,
    set_degree_cap,
    z_of,
)
from .characters import char_table, character
from .symfunc import (
    SeriesSpec,
    SymFunc,
    antipode,
    complete,
    elementary,
    expand_series,
    hall_inner,
    inner_product_op,
    monomial,
    outer_product,
    perp,
    plethysm,
    power_sum,
    schur,
    skew,
)
from .coalgebra import Tensor2, coproduct
from .arw import (
    BranchCapError,
    InnerStep,
    MixtureState,
    OuterStep,
    PlethStep,
    PureInnerState,
    WeightedPlethStep,
    measure,
    positivity_audit,
)
from .expr import parse_symfunc

__version__ = "0.1.0"
