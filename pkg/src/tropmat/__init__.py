"""Exact matroid, Chow ring and tropical moduli computations."""

__version__ = "0.1.0"

from .matroid import Matroid, boolean, direct_sum, graphic, linear, uniform  # noqa: F401
from .fan import Fan, bergman_fan, permutohedral_fan  # noqa: F401
from .chow import ChowRing, ChowClass  # noqa: F401
from .cycles import TropicalCycle, check_balanced, stable_intersect  # noqa: F401
from .moduli import DiscreteData, make_gamma, moduli_complex, vdim  # noqa: F401
from .virtual import (boolean_weight, candidate_support, product_lift,  # noqa: F401
                      reconstruct_count, solve_virtual_weight)
