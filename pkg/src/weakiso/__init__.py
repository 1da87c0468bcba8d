"""Weak isometry of finite metric spaces: canonical forms, curvature sets,
rescaled Gromov-Hausdorff and persistence dissimilarities."""

from __future__ import annotations

__version__ = "0.1.0"

from .config import Settings, settings
from .curvature import (
    CurvatureSet,
    SampleMatrix,
    canonical_matrix_form,
    curvature_set,
    curvature_sets_equal,
    is_isometric_via_curvature,
    is_weakly_isometric_via_curvature,
    project,
    reduced_curvature_set,
)
from .diagrams import (
    Diagram,
    RescaledDiagram,
    bottleneck_distance,
    dtilde,
    interleaving_distance,
    min_rescaled_interleaving,
    reindex_diagram,
    rescale_diagram,
    stability_check,
)
from .errors import CapExceeded, InfiniteMismatch, InvalidInput, WeakIsoError
from .gh import Correspondence, dhat, distortion, gh_distance, min_rescaled_gh
from .isometry import brute_force_weak_isometry, canonicalize, is_isometric, is_weakly_isometric
from .isotonic import IsotonicInstance, isotonic_linf
from .monotone import MonotoneMap, extend_monotone
from .space import FiniteMetricSpace, apply_rescaling, distance_set, validate
from .topology import (
    Barcode,
    FlagFiltration,
    betti,
    flag_filtration,
    per_scale_isomorphic,
    persistence,
    rescale_filtration,
    vr_complex,
)

__all__ = [
    "__version__",
    "apply_rescaling",
    "Barcode",
    "betti",
    "bottleneck_distance",
    "brute_force_weak_isometry",
    "canonical_matrix_form",
    "canonicalize",
    "CapExceeded",
    "Correspondence",
    "curvature_set",
    "curvature_sets_equal",
    "CurvatureSet",
    "dhat",
    "Diagram",
    "distance_set",
    "distortion",
    "dtilde",
    "extend_monotone",
    "FiniteMetricSpace",
    "flag_filtration",
    "FlagFiltration",
    "gh_distance",
    "InfiniteMismatch",
    "interleaving_distance",
    "InvalidInput",
    "is_isometric",
    "is_isometric_via_curvature",
    "is_weakly_isometric",
    "is_weakly_isometric_via_curvature",
    "isotonic_linf",
    "IsotonicInstance",
    "min_rescaled_gh",
    "min_rescaled_interleaving",
    "MonotoneMap",
    "per_scale_isomorphic",
    "persistence",
    "project",
    "reduced_curvature_set",
    "reindex_diagram",
    "rescale_diagram",
    "rescale_filtration",
    "RescaledDiagram",
    "SampleMatrix",
    "settings",
    "Settings",
    "stability_check",
    "validate",
    "vr_complex",
    "WeakIsoError",
]
