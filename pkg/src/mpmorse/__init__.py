"""mpmorse: Morse-type bookkeeping for multifiltered cell complexes.

Given a cell complex filtered by n integer parameters (each cell entering at
a single grade), this package computes, over a prime field:

* critical cell counts c_q(u), the dimensions of H_q(sublevel, union of
  one-step-down sublevels);
* multigraded Betti numbers xi_p^q(u), read off a Koszul complex of sublevel
  homologies;
* the pages of the Mayer-Vietoris spectral sequence of the one-step-down
  cover, with their differentials' ranks;
* and every Morse-type inequality and Euler-style identity tying those
  numbers together, checked grade by grade.

The public surface is re-exported here; see the README for a tour.
"""

from .fieldmat import (
    FieldError,
    FpMatrix,
    RepresentationError,
    image_basis,
    induced_quotient_map,
    kernel_basis,
    rank,
    rref,
    solve_in_span,
)
from .complexes import (
    Cell,
    CellComplex,
    NotASubcomplexError,
    Subcomplex,
    chain_inclusion,
    from_simplices,
    relative_homology_dims,
)
from .filtration import (
    EmptyFiltrationError,
    MultiFiltration,
    evaluation_grid,
    grade_box,
)
from .koszul import (
    BettiTable,
    FiltrationHomology,
    KoszulComplexAtGrade,
    betti_table,
    koszul_at,
)
from .spectral import DoubleComplexAtGrade, SpectralPages, compute_pages, double_complex_at
from .inequalities import FiltrationReport, GradeReport, full_report
from .examples import EXAMPLES, RandomSpec, build_example, random_filtration
from .mfcc import MfccSyntaxError, MfccValidationError, parse_mfcc, write_mfcc

__version__ = "0.1.0"

__all__ = [
    "FieldError",
    "FpMatrix",
    "RepresentationError",
    "image_basis",
    "induced_quotient_map",
    "kernel_basis",
    "rank",
    "rref",
    "solve_in_span",
    "Cell",
    "CellComplex",
    "NotASubcomplexError",
    "Subcomplex",
    "chain_inclusion",
    "from_simplices",
    "relative_homology_dims",
    "EmptyFiltrationError",
    "MultiFiltration",
    "evaluation_grid",
    "grade_box",
    "BettiTable",
    "FiltrationHomology",
    "KoszulComplexAtGrade",
    "betti_table",
    "koszul_at",
    "DoubleComplexAtGrade",
    "SpectralPages",
    "compute_pages",
    "double_complex_at",
    "FiltrationReport",
    "GradeReport",
    "full_report",
    "EXAMPLES",
    "RandomSpec",
    "build_example",
    "random_filtration",
    "MfccSyntaxError",
    "MfccValidationError",
    "parse_mfcc",
    "write_mfcc",
    "__version__",
]
