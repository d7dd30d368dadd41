"""Finite presheaves on Eilenberg-Zilber categories.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .bipresheaf import (bi_skeleton, curry_level, curry_level_map, ez_square, external_product,
                         external_product_map, latching_formula_check, latching_object,
                         square_category)
from .category import (BoxCategory, EZCategory, Morphism, ProductCategory, SimplexCategory,
                       SliceCategory, parse_category)
from .diagonal import (CATEGORICAL_PRODUCT, GEOMETRIC, JOIN, PromonoidalStructure, day_diagonal,
                       diagonal, diagonal_categorical, induced_map, tensor)
from .errors import BoundError, EzError, ParseError, UnsupportedBaseError
from .homotopy import (ChainComplex, HomologySummary, chain_complex, diagonal_lemma_instance,
                       homology, is_homology_equivalence, smith_normal_form)
from .presheaf import (CellComplex, ComplexMap, Element, boundary, colimit, coproduct,
                       ez_decompose, filtration_check, find_isomorphism, is_isomorphic,
                       is_pushout, product, pushout, representable, skeletal_square, skeleton)
from .textio import dump_complex, dump_map, load_complex, load_map

__all__ = [
    "BoundError", "BoxCategory", "CATEGORICAL_PRODUCT", "CellComplex", "ChainComplex",
    "ComplexMap", "EZCategory", "Element", "EzError", "GEOMETRIC", "HomologySummary", "JOIN",
    "Morphism", "ParseError", "ProductCategory", "PromonoidalStructure", "SimplexCategory",
    "SliceCategory", "UnsupportedBaseError", "bi_skeleton", "boundary", "chain_complex",
    "colimit", "coproduct", "curry_level", "curry_level_map", "day_diagonal", "diagonal",
    "diagonal_categorical", "diagonal_lemma_instance", "dump_complex", "dump_map",
    "external_product", "external_product_map", "ez_decompose", "ez_square",
    "filtration_check", "find_isomorphism", "homology", "induced_map", "is_homology_equivalence",
    "is_isomorphic", "is_pushout", "latching_formula_check", "latching_object", "load_complex",
    "load_map", "parse_category", "product", "pushout", "representable", "skeletal_square",
    "skeleton", "smith_normal_form", "square_category", "tensor",
]
