"""Exact BPS/DT invariants of symmetric quivers, wall-crossing checks,
super-potential trace calculus and Gopakumar-Vafa lattice arithmetic."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    LaurentPoly,
    RationalFunction,
    TruncatedSeries,
    adams,
    plethystic_exp,
    plethystic_log,
    rational_gcd,
)
from .quiver import (  # noqa: E402
    Quiver,
    det_character,
    euler_form,
    ext_quiver,
    gl_order,
    is_symmetric,
    stack_count,
)
from .stability import StabilityXi, hn_strata, is_generic, semistable_count, slope_xi  # noqa: E402
from .bps import bps_trivial, bps_xi, euler_specialize, invariance_check  # noqa: E402
