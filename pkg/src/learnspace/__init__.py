"""Learning spaces (antimatroids): axioms, projections, children, assessment."""

from learnspace.core import (
    ItemDomain,
    SetFamily,
    StateSet,
    TightPath,
    is_accessible,
    is_knowledge_structure,
    is_learning_space,
    is_partial_knowledge_structure,
    is_partial_learning_space,
    is_union_closed,
    is_well_graded,
    satisfies_L1,
    satisfies_L2,
    sym_diff_distance,
    tight_path,
    union_close,
)
from learnspace.projection import (
    Child,
    ClassPartition,
    EquivClass,
    child_of_class,
    children,
    equivalent_under,
    is_trivial_child,
    is_yielding,
    partition_by,
    plus_child,
    project,
)
from learnspace.serialize import load_fixture, parse_family, serialize_family

__version__ = "0.1.0"
