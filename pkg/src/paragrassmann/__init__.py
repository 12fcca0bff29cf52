"""Exact computer algebra for paragrassmann variables.

Two conjugate generators th, thb with th^l = thb^l = 0 and
th*thb = q*thb*th, exact Laurent-polynomial coefficients, a weighted
sesquilinear form, reproducing kernels for the holomorphic subspace and
for the full algebra, and the coherent-state (Segal-Bargmann) transform.
"""

from .algebra import (
    PGAlgebra,
    PGElement,
    Subspace,
    poly_calculus,
    substitute_variable,
    w_to_aw,
)
from .coherent import (
    CoherentState,
    coherent_bra,
    coherent_ket,
    coherent_pairing,
    hilbert_inner,
    resolution_of_identity,
    sb_inverse,
    sb_transform,
    sb_transform_ket,
)
from .errors import (
    DimensionMismatchError,
    EnvironmentMismatchError,
    IndefiniteMetricWarning,
    NotHilbertSpaceError,
    ParseError,
    PGError,
    SingularWeightError,
    SymbolicOrderError,
    WrongSubspaceError,
)
from .inner import (
    WeightSpec,
    inner_berezin,
    inner_closed,
    negative_norm_witness,
    norm_squared,
    phi_basis,
    weight_element,
)
from .kernels import (
    GramMatrix,
    OperatorOnBH,
    TensorElement,
    gram_det,
    gram_matrix,
    kernel_ah,
    kernel_bh,
    kernel_diagonal_operator,
    kernel_pg,
    kernel_self_pairing,
    pointwise_operator_bound,
    reproduce_ah,
    reproduce_bh,
    reproduce_pg,
)
from .parsing import SessionConfig, eval_ast, eval_expression, parse
from .printing import print_json, print_latex, print_text, render
from .scalars import GaussianRational, Ring, Scalar

__version__ = "0.1.0"


def session(l: int = 2, q: str = "symbolic", weights: str = "symbolic"):
    """Convenience: a (algebra, weight spec) pair from CLI-style settings."""
    cfg = SessionConfig(l=l, q=q, weights=weights)
    return cfg.algebra, cfg.weight_spec
