"""Exact computations in partial Burnside rings of small finite groups."""

__version__ = "0.1.0"

from .groups import (  # noqa: E402
    Group,
    GroupHom,
    Perm,
    Subgroup,
    builtin_group,
    group_from_generators,
    quotient_group,
    subgroup_closure,
)
from .lattice import (  # noqa: E402
    Collection,
    SubgroupLattice,
    all_subgroups,
    bs,
    collection_closure,
    full_collection,
    normal_collection,
    parabolic_collection,
    standard_basic,
)
from .burnside import (  # noqa: E402
    BurnsideElement,
    matsuda_unit_count,
    matsuda_unit_generators,
    nil_square_set,
    table_of_marks,
    units_bruteforce,
)
from .morphisms import fw_alpha, quotient_iso, surjection_iso  # noqa: E402

__all__ = [
    "BurnsideElement", "Collection", "Group", "GroupHom", "Perm", "Subgroup", "SubgroupLattice",
    "all_subgroups", "bs", "builtin_group", "collection_closure", "full_collection", "fw_alpha",
    "group_from_generators", "matsuda_unit_count", "matsuda_unit_generators", "nil_square_set",
    "normal_collection", "parabolic_collection", "quotient_group", "quotient_iso", "standard_basic",
    "subgroup_closure", "surjection_iso", "table_of_marks", "units_bruteforce",
]
