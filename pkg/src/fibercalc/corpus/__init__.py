"""Example corpus: generators, row engines and golden table verifications."""

from .bases import (FinSetBase, FSetObj, FnArrow, skeletal_set, FinSpaceBase,
                    SpaceObj, CtsMap, spaces_upto, poset_iso_classes)
from .generators import (finset_universe, PowersetIndexed, powerset,
                         subset_forgetful, kappa_small, FamilyIndexed,
                         represented_indexed, epi_mono, sierpinski,
                         OpensIndexed, finite_space_setup, ExampleSpec,
                         build_example)
from .engines import (least_image, greatest_coimage, formula_image,
                      formula_coimage, subsets_bc_square,
                      subsets_smooth_proper, subsets_classify,
                      verify_quantifier_formulas, verify_quantifier_mates_bulk,
                      codomain_classify, opens_classify, open_map_oracle,
                      universally_closed_oracle, opens_acyclic)
from .spacerow import finite_space_row
from .dofrow import (standard_probes, all_functors, lan_diagram,
                     strict_smooth_dof, dof_strict_smooth_row,
                     probe_cat_base, DofIndexed)
from .bounds import smooth_proper_bounds, coproduct_exists, product_exists
from .rows import ROWS, verify_table_row, RowNotFiniteScale

__all__ = [
    "FinSetBase", "FSetObj", "FnArrow", "skeletal_set", "FinSpaceBase",
    "SpaceObj", "CtsMap", "spaces_upto", "poset_iso_classes",
    "finset_universe", "PowersetIndexed", "powerset", "subset_forgetful",
    "kappa_small", "FamilyIndexed", "represented_indexed", "epi_mono",
    "sierpinski", "OpensIndexed", "finite_space_setup", "ExampleSpec",
    "build_example", "probe_cat_base", "DofIndexed",
    "least_image", "greatest_coimage", "formula_image", "formula_coimage",
    "subsets_bc_square", "subsets_smooth_proper", "subsets_classify",
    "verify_quantifier_formulas", "verify_quantifier_mates_bulk",
    "codomain_classify", "opens_classify", "open_map_oracle",
    "universally_closed_oracle", "opens_acyclic", "finite_space_row",
    "standard_probes", "all_functors", "lan_diagram", "strict_smooth_dof",
    "dof_strict_smooth_row", "smooth_proper_bounds", "coproduct_exists",
    "product_exists", "ROWS", "verify_table_row", "RowNotFiniteScale",
]
