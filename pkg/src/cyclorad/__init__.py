"""Circumradius, centre position and area of cyclic polygons from their sides."""

from .area import (
    AreaResult,
    CriterionReport,
    area_integral,
    area_sum,
    criteria,
    criterion1,
    criterion2,
    criterion3,
    segment_area,
)
from .closed_forms import (
    QuadrilateralRadii,
    TriangleSides,
    area_triangle_heron,
    radius_quadrilateral,
    radius_regular,
    radius_triangle,
)
from .core import (
    Classification,
    Kind,
    Signature,
    SideList,
    UnitComplex,
    central_angle,
    classify_a_priori,
    complex_factor,
    product_residual,
    validate_sides,
)
from .errors import CycloradError
from .polynomial import (
    FactoredPolynomial,
    MultilinearForm,
    RadiusPolynomial,
    closing_equation,
    eliminate_radicals,
    expand_product,
    radius_polynomial,
    regular_polynomial,
)
from .solver import (
    RadiusSolution,
    RootSet,
    all_positive_roots,
    select_convex_root,
    solve_radius_convex,
    solve_radius_signed,
)
from .verify import PolygonReconstruction, reconstruct_vertices, render_svg, shoelace_area

__version__ = "0.1.0"
