"""Permutation groups, KG-modules, the Meataxe and simple-module catalogs."""

from .catalog import (
    NONSELFDUAL,
    ORTHOGONAL,
    SYMPLECTIC,
    TRIVIAL,
    Catalog,
    SimpleClass,
    chop_classes,
    composition_multiplicities,
    signature,
    simple_catalog,
    simple_submodules,
    socle,
)
from .meataxe import MeataxeError, charpoly, chop
from .perm import (
    CapExceeded,
    GroupError,
    PermGroup,
    alternating_group_5,
    cyclic_group,
    dihedral_group,
    group_make,
    quaternion_group,
    symmetric_group,
    two_torsion_characters,
)
from .rep import (
    Rep,
    RepError,
    conjugate_rep,
    direct_sum,
    dual_rep,
    fold,
    hom_space,
    invariant_bilinear,
    invariant_quadratic,
    is_submodule,
    iso_test,
    permutation_rep,
    quotient_rep,
    regular_rep,
    rep_from_dict,
    sub_rep,
    trivial_rep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
