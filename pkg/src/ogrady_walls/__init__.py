"""Walls, wall types and nef/movable cones for O'Grady-type Mukai vectors on
K3 surfaces of Picard rank one."""

from .cones import ConeRay, ConeResult, movable_cone, nef_cone, ns_gram, orthogonal_ray, square_zero_class
from .enumeration import DEFAULT_WINDOW, Window, WallRecord, enumerate_walls
from .errors import WallsError
from .lattice import WallLattice, make_wall_lattice
from .mukai import (MukaiVector, PrimitiveDecomposition, Surface, exp_twist, is_ogrady_type, pairing,
                    primitive_decompose, spherical_reflect)
from .quadratic import ClassQuery, PellSolution, brute_force_oracle, pell_fundamental, pell_general, \
    solve_constrained_classes
from .stab import BMImage, SlicePoint, WallCurve, bm_ray, central_charge, numerical_wall
from .walls import ConeMembership, Kind, WallClassification, classify_wall, effectivity_sign

__version__ = "0.1.0"
