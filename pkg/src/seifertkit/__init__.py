"""Seifert invariants, geometry, orbifold covers and equivariant descent data."""

from .cover import (
    CoverCertificate,
    deck_group_order,
    galois_closure,
    orientation_double_cover,
    smooth_cover_search,
    verify_certificate,
)
from .descent import (
    compute_twist,
    descent_degree_check,
    fiber_exponents_from_symbol,
    numeric_exponent_oracle,
    pullback_euler,
    residual_exponents,
)
from .pipeline import PipelineReport, Status, run_pipeline
from .symbol import (
    Geometry,
    Orbifold2D,
    SeifertSymbol,
    base_orbifold,
    classify_geometry,
    euler_number,
    is_bad_orbifold,
    is_spherical,
    normalize,
    orbifold_euler_characteristic,
    parse_orbifold,
    parse_symbol,
)

__version__ = "0.1.0"
