"""Exact major-index statistics on standard Young tableaux."""

from .cumulants import (
    CumulantSequence,
    DegenerateDistribution,
    MomentSequence,
    bernoulli,
    cumulants_to_central_moments,
    cumulants_to_moments,
    exact_central_moments_from_table,
    exact_moments_from_table,
    formal_cumulants,
    moments_to_cumulants,
    normalize,
    power_sum,
)
from .qpoly import (
    DistributionTable,
    IntPolynomial,
    NotAPolynomial,
    QProductForm,
    baj_inv_gf,
    distribution_from_poly,
    expand,
    maj_gf,
    q_binomial,
    q_factorial,
    q_int,
    q_multinomial,
)
from .shapes import (
    BlockDiagonalShape,
    Cell,
    Partition,
    RegimeError,
    ReverseFilling,
    ShapeError,
    SkewShape,
    aft,
    corners,
    embed_block_diagonal,
    greedy_rsyt,
    hook_lengths,
    parse_shape,
    partitions,
    rank,
    transpose,
)

__version__ = "0.1.0"
