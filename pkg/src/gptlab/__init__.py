"""Exact-arithmetic analysis of polytopic generalized-probabilistic-theory
state spaces: pure effect enumeration, existence of face-fixing measurement
transformations, classical/non-classical certification, and exact minimal
disturbance values.
"""

__version__ = "0.1.0"

from .statespace import (  # noqa: E402,F401
    Classification,
    Effect,
    StateSpace,
    build,
    certain_face,
    classify,
    complementary,
    impossible_face,
    lift,
    pure_effects,
    state_facets,
)
from .postulate import (  # noqa: E402,F401
    check_classicality_equivalence,
    check_postulate,
    facet_pure_effect,
    find_fixing_transformation,
)
from .disturbance import (  # noqa: E402,F401
    Norm,
    check_positive_disturbance,
    min_disturbance,
)
