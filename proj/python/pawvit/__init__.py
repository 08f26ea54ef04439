"""Anatomy-aware patch warping of ear images and verification evaluation."""

from ._core import (
    PawError,
    binarize,
    build_fan,
    canonical_reference,
    centroid,
    convex_hull,
    count_pairs,
    landmarks_to_mask,
    largest_component,
    mask_intersect,
    mask_union,
    normalize_image,
    normalize_mask,
    order_anchors,
    polygon_area,
    repeated_auc,
    resample_closed,
    roc_auc,
    run_pipeline,
    select_anchors,
    slice,
    solve_affine,
    stitch,
    trace_boundary,
    warp_pipeline,
    warp_quad_to_patch,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
