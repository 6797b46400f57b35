"""klcat: exact Coxeter / Hecke / Kazhdan-Lusztig engine.

Builds Coxeter group tables from an arbitrary Coxeter matrix, computes the
Kazhdan-Lusztig basis and polynomials by the defining algorithm, shadows
light-leaf trees to produce graded cell characters, and verifies that the
branching of cell and simple module classes mechanically re-derives the
one-step KL recursion, bit-exactly.
"""

from .laurent import LaurentPoly, ONE, V, V_INV, ZERO, v_power
from .coxeter import (
    CoxeterMatrix,
    Element,
    GroupTable,
    IncompleteTableError,
    all_reduced_words,
    bruhat_interval,
    bruhat_leq,
    build_group,
    descents,
    evaluate_word,
    is_reduced,
    mult_gen,
    parse_word,
    preset_matrix,
    word_name,
)
from .hecke import (
    HeckeElt,
    bar_involution,
    bott_samelson_class,
    left_mul_kl,
    left_mul_std,
    product,
    std_basis,
    unit,
)
from .kl import (
    KLTable,
    classical_recursion,
    compute_kl,
    recursion_kl_poly,
    to_classical,
)
from .leaves import (
    LeafPath,
    LeafSet,
    cell_character,
    character_map,
    enumerate_leaves,
    split_top_generator,
)
from .cells import CellDatum, build_cell_datum, char_cell_via_hecke, verify_decomposition_identity
from .branch import (
    GrothendieckVector,
    ResData,
    build_res,
    derive_kl_recursion,
    res_cell_class,
    verify_branching,
    verify_restriction_counts,
)
from .verify import run_suite

__version__ = "0.1.0"
