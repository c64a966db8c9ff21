"""Unit-area convex hexagon tilings with a prescribed number of irregular vertices."""
from .analysis import AsymptoticRow, closed_form_Dk, pentagon_area, ratio_row
from .construction import (
    ConePatch,
    ConeSpec,
    ModificationData,
    Tile,
    TilingPatch,
    apply_map,
    assemble_fk,
    assemble_gk,
    base_cone_patch,
    construct,
    modify_to_G,
    shear_map,
)
from .geometry import DEFAULT_TOLERANCE, Polygon, TolerancePolicy
from .verify import (
    VerificationReport,
    VertexIncidence,
    check_akopyan,
    find_irregular_vertices,
    full_report,
    tile_index,
    total_index,
    validate_patch,
)

__version__ = "0.1.0"
