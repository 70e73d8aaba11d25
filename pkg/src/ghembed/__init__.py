"""Isometric scaffold embedding of bounded Chebyshev sets into the Gromov-Hausdorff space."""

from .estimators import KuratowskiEmbedding, ScaffoldEmbedding
from .gh import (
    BudgetExceeded,
    ComponentMapReport,
    EpsIsometryReport,
    analyze_component_map,
    check_eps_isometry,
    distortion,
    gh_bruteforce,
    gh_lower_bounds,
    natural_map,
)
from .hausdorff import (
    nearest_component,
    scaffold_distance_matrix,
    scaffold_hausdorff,
    scaffold_hausdorff_sampled,
)
from .kuratowski import embed_finite_space, kuratowski_embed
from .lemma import LemmaCase, LemmaItem, certify_lemma, verify_lemma_case
from .metric import (
    FiniteMetricSpace,
    chebyshev_distance,
    check_bilipschitz,
    euclidean_distance,
    hausdorff_distance_finite,
    validate_metric,
)
from .scaffold import Scaffold, ScaffoldParams, Variant, build_scaffold, normalize, sample_scaffold
from .svg import render_svg
from .verify import VerifyConfig, run_verify

__version__ = "0.1.0"
