"""Instance families, their closed forms, pseudo-tours, and certificates."""

from .certificates import CertificateError, CertificateReport, lambda_certificate
from .ijk import (
    ANCHOR_TAGS,
    GAP_TAGS,
    METRIC,
    RECTILINEAR,
    GeneralizedRatios,
    IJK,
    LabeledVertexSet,
    PseudoTour,
    best_partition,
    closed_form_lp_I2,
    closed_form_lp_I3,
    closed_form_opt_I2,
    closed_form_opt_I3,
    closed_form_ratio_I2,
    closed_form_ratio_metric,
    family_ratios,
    fractional_xijk,
    gen_I2,
    gen_I3,
    labeled_vertices,
    line_gaps,
    metric_maximum_ratio,
    pseudo_tours,
    shortcut_tour,
)
from .subdivision import (
    ODD_VERTEX_CAP,
    SubdividedGraphSpec,
    gen_hexagon,
    gen_subdivided,
    gen_tetrahedron,
    hexagon_spec,
    tetrahedron_spec,
    tjoin_ratio_bound,
)

__all__ = [
    "ANCHOR_TAGS",
    "ODD_VERTEX_CAP",
    "SubdividedGraphSpec",
    "GAP_TAGS",
    "METRIC",
    "RECTILINEAR",
    "CertificateError",
    "CertificateReport",
    "GeneralizedRatios",
    "IJK",
    "LabeledVertexSet",
    "PseudoTour",
    "best_partition",
    "closed_form_lp_I2",
    "closed_form_lp_I3",
    "closed_form_opt_I2",
    "closed_form_opt_I3",
    "closed_form_ratio_I2",
    "closed_form_ratio_metric",
    "family_ratios",
    "fractional_xijk",
    "gen_I2",
    "gen_I3",
    "gen_hexagon",
    "gen_subdivided",
    "gen_tetrahedron",
    "hexagon_spec",
    "labeled_vertices",
    "lambda_certificate",
    "line_gaps",
    "metric_maximum_ratio",
    "pseudo_tours",
    "shortcut_tour",
    "tetrahedron_spec",
    "tjoin_ratio_bound",
]
