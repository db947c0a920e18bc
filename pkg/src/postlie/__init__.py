"""Post-Lie algebras, their enveloping Hopf algebras, the post-Lie Magnus
expansion and r-matrix factorization, in exact arithmetic."""

from postlie.algebra import (
    LieAlgebra,
    LinearEndo,
    PostLieProduct,
    bracket,
    check_mcybe,
    double_bracket,
    gl,
    post_lie_from_r,
    r_plus_minus,
    sl,
    triangular_r,
    validate_post_lie,
)
from postlie.uea import UEA, Element, Tensor
from postlie.lift import PostLieUEA

__all__ = [
    "LieAlgebra",
    "LinearEndo",
    "PostLieProduct",
    "bracket",
    "check_mcybe",
    "double_bracket",
    "gl",
    "sl",
    "post_lie_from_r",
    "r_plus_minus",
    "triangular_r",
    "validate_post_lie",
    "UEA",
    "Element",
    "Tensor",
    "PostLieUEA",
]
