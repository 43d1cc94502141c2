"""Exact computation of genus-0 twisted stable-quotients and Gromov-Witten
invariants of projective spaces from hypergeometric mirror series, together
with order-by-order machine verification of the structural identities they
satisfy: pole recursivity, self-polynomiality, residue reconstruction, and
closed forms for twisted Hurwitz numbers.

All arithmetic is exact over the rationals; every check is an equality of
reduced fractions, never an approximation.
"""

from .equivariant import (
    EquivariantYSeries,
    check_exponential_regularity,
    check_mirror_identity,
    check_polynomiality,
    check_recursivity,
    edge_coefficient_via_euler,
    phi_series,
    recursion_coefficient,
    reconstruct_z,
    secondary_coefficients_y,
    y_equivariant,
    y_equivariant_family,
    y_equivariant_formal,
)
from .frames import FixedPointFrame, random_frames, validate_frame
from .hurwitz import (
    HurwitzTable,
    LXiPair,
    hurwitz_f,
    hurwitz_table,
    l0_identity_check,
    l_series,
    l_xi_pair,
    m02d_psi_integral,
    m02d_psi_integral_recursive,
    hurwitz_identity_sides,
    xi_series,
)
from .mirror import (
    TABLE1_GOLDEN,
    ExponentTuple,
    InvariantRecord,
    XClassSeries,
    gw_invariant,
    i_series,
    mirror_map_j,
    sq_invariant,
    table1,
    tuple_stats,
    y_series,
    z_series,
    zgw_series,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ExponentTuple",
    "InvariantRecord",
    "XClassSeries",
    "tuple_stats",
    "y_series",
    "i_series",
    "z_series",
    "mirror_map_j",
    "zgw_series",
    "sq_invariant",
    "gw_invariant",
    "table1",
    "TABLE1_GOLDEN",
    "FixedPointFrame",
    "validate_frame",
    "random_frames",
    "EquivariantYSeries",
    "y_equivariant",
    "y_equivariant_family",
    "y_equivariant_formal",
    "recursion_coefficient",
    "edge_coefficient_via_euler",
    "check_recursivity",
    "secondary_coefficients_y",
    "phi_series",
    "check_polynomiality",
    "reconstruct_z",
    "check_mirror_identity",
    "check_exponential_regularity",
    "l_series",
    "xi_series",
    "LXiPair",
    "l_xi_pair",
    "hurwitz_f",
    "HurwitzTable",
    "hurwitz_table",
    "hurwitz_identity_sides",
    "m02d_psi_integral",
    "m02d_psi_integral_recursive",
    "l0_identity_check",
]
