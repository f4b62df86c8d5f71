"""ovalkit: offsets, envelopes and singularities of plane parametric curves."""

__version__ = "0.1.0"

from .cayley import (  # noqa: F401
    CayleyParams,
    ShapeClass,
    bifocal_residual,
    cayley_branches,
    cayley_implicit,
    cayley_param,
    classify_shape,
)
from .contours import ContourGrid, contour, filter_true_oval  # noqa: F401
from .curves import (  # noqa: F401
    ParametricCurve,
    circle,
    curvature,
    derivatives_fd,
    ellipse,
    figure_eight,
    pinched_loop,
)
from .errors import (  # noqa: F401
    CuspDegenerateError,
    DegeneratePointError,
    DomainError,
    InvalidScenarioError,
    NumericalError,
    OvalkitError,
    PoleError,
)
from .implicit import ImplicitPolynomial  # noqa: F401
from .offsets import (  # noqa: F401
    CircleFamily,
    OffsetSpec,
    envelope_circle_family,
    offset_curvature,
    offset_point,
    offset_velocity,
    sample_envelope,
    sample_offset,
    unit_normal,
)
from .polyline import Arc, Polyline  # noqa: F401
from .singular import (  # noqa: F401
    SearchRange,
    SingularPoint,
    complete_x_symmetry,
    find_all_crunodes,
    find_crunodes,
    find_cusps_curvature,
    find_cusps_stationary,
    polyline_oracle,
)

# scenario imports __version__ from this module, so it must come last
from .scenario import (  # noqa: E402,F401
    GALLERY_SCENARIO,
    ResultDocument,
    Scenario,
    emit_json,
    parse_document,
    run_scenario,
    validate_scenario,
)
