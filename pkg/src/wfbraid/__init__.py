"""Exact algebra of the weakly framed surface braid group and its Heisenberg
quotient: presentation, quotient map, oriented automorphisms, the linearised
regular representation and low-degree homology with local coefficients."""

from .braid_presentation import (
    BraidWord,
    Generator,
    Presentation,
    SurfaceParams,
    build_presentation,
    free_reduce,
    parse_word,
    render,
)
from .heisenberg import (
    GroupRingElem,
    HeisElem,
    HeisParams,
    heis_inverse,
    heis_mul,
    heis_pow,
    kernel_witnesses,
    phi,
    verify_presentation,
)
from .automorphisms import HeisAut, NotSymplectic, aut_apply, aut_compose, aut_inverse, make_aut
from .representations import (
    CoefficientSystem,
    affine_slice,
    check_representation,
    intertwiner,
    rho_L,
    twist,
)
from .fox_homology import (
    boundary_matrices,
    coinvariants_dim,
    fox_derivative,
    homology_ranks,
    integral_homology_trivial,
)

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Generator",
    "Presentation",
    "SurfaceParams",
    "build_presentation",
    "free_reduce",
    "parse_word",
    "render",
    "GroupRingElem",
    "HeisElem",
    "HeisParams",
    "heis_inverse",
    "heis_mul",
    "heis_pow",
    "kernel_witnesses",
    "phi",
    "verify_presentation",
    "CoefficientSystem",
    "affine_slice",
    "check_representation",
    "intertwiner",
    "rho_L",
    "twist",
    "boundary_matrices",
    "coinvariants_dim",
    "fox_derivative",
    "homology_ranks",
    "integral_homology_trivial",
    "HeisAut",
    "NotSymplectic",
    "aut_apply",
    "aut_compose",
    "aut_inverse",
    "make_aut",
]
