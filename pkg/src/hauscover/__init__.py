"""Exact Hausdorff content, premeasures and coarea slicing checks on finite
metric spaces and finite unions of intervals."""

__version__ = "0.1.0"

from .coarea import (StepFunction, coarea_report, coarea_report_intervals, envelope,
                     integrate_step, interval_hull, level_set, slice_profile, subfamily_at)
from .covering import (CoverQuery, CoveringFamily, cover_value, exact_cover, greedy_cover,
                       measure_profile, pushforward_check)
from .generators import CantorSpec, RandomSpec, cantor, cantor_set, random_space, sample_space
from .intervals import (IntervalUnion, content_exact, diameter_u, hausdorff_eps, hausdorff_measure,
                        normalize)
from .metric import (FiniteMetricSpace, MetricMap, ball, diameter, dist_to_set, lipschitz_constant,
                     neighborhood, validate_metric)
from .results import ContentResult

__all__ = [
    "CantorSpec", "ContentResult", "CoverQuery", "CoveringFamily", "FiniteMetricSpace",
    "IntervalUnion", "MetricMap", "RandomSpec", "StepFunction", "ball", "cantor", "cantor_set",
    "coarea_report", "coarea_report_intervals", "content_exact", "cover_value", "diameter",
    "diameter_u", "dist_to_set", "envelope", "exact_cover", "greedy_cover", "hausdorff_eps",
    "hausdorff_measure", "integrate_step", "interval_hull", "level_set", "lipschitz_constant",
    "measure_profile", "neighborhood", "normalize", "pushforward_check", "random_space",
    "sample_space", "slice_profile", "subfamily_at", "validate_metric",
]
