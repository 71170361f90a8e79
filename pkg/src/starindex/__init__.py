"""Star kernels, convexity indices and fixed-point eigencurves in the plane."""

from .brouwer import (
    Branch,
    DichotomyVerdict,
    EigenCurve,
    FixedPointResult,
    brouwer_solve,
    check_dichotomy,
    eigencurve,
    eigencurve_convex,
)
from .gauge_index import GaugeEvaluator, IndexReport, Which, convexity_index_at, convexity_index_global, gauge
from .geometry import (
    TOL_GEOM,
    Containment,
    RadialProfile,
    SimplePolygon,
    StarPolygon,
    contains,
    convex_hull,
    radial_profile,
    validate_simple,
)
from .star_kernel import KernelResult, is_star_center, kernel
from .metric import DensifyResult, Directional, Euclidean, SeminormFamily, densify, pseudo_distance
from .selfmap import (
    AffineThenProject,
    Compose,
    Constant,
    RadialDistort,
    RotateAboutThenProject,
    evaluate,
    project_radial,
)

__version__ = "0.1.0"
