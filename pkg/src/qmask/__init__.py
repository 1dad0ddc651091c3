"""qmask: qubit information masking on the Bloch sphere.

Masking hides a qubit's state in two-qubit correlations so both reduced
states are identical across the whole input set.  This package builds
the explicit isometry maskers that achieve it, characterizes exactly
which state sets any linear operator can mask (spherical circles at
most), cross-validates that analysis with a brute-force grid oracle,
and runs a multi-masker secret-sharing protocol whose decoding is
circle intersection on the sphere.
"""

from .analysis import (
    AffineConstraint,
    Circle,
    FullSphere,
    GeneralLinearOp,
    MaskableClass,
    PointPair,
    ProductFormReport,
    SinglePoint,
    class_distance,
    constraint_matrix,
    extract_constraints,
    f01_symbolic,
    maskable_set,
    operator_scale,
    product_form_diagnosis,
    reduced_pair_raw,
)
from .bloch import (
    AngleState,
    CircleIntersection,
    Coincident,
    Empty,
    OnePoint,
    SphericalCircle,
    TwoPoints,
    angles_to_bloch,
    angles_to_state,
    bloch_to_angles,
    canonical_mask_params,
    circle_from_mask_params,
    circle_through_three,
    circles_equal,
    distance_to_circle,
    intersect_circles,
    sample_circle,
)
from .errors import (
    CorruptShareError,
    DegenerateInputError,
    EmptyCircleError,
    InvalidInputError,
    InvalidSchemeError,
    InvariantViolationError,
    MaskingError,
)
from .linalg import TOL_EQUALITY, TOL_SELF, mat_distance, partial_trace_a, partial_trace_b
from .masking import (
    Isometry42,
    MaskerParams,
    MaskReport,
    apply_masker,
    build_masker,
    hbar,
    maskable_circle,
    masker_for_states,
    predicted_reduced,
    verify_mask,
)
from .crosscheck import agreement_report
from .oracle import (
    GridSpec,
    default_kappa,
    grid_deviations,
    grid_scan,
    masked_fraction_scaling,
)
from .protocol import (
    AmbiguousCircle,
    DecodeResult,
    Inconsistent,
    Scheme,
    Share,
    TwoCandidates,
    Unique,
    decode,
    encode,
    fig1_axes,
    fig2_vertical,
    fig3_pole,
    general,
    preset_scheme,
    preset_schemes,
    share_constraint,
)

__version__ = "0.1.0"
