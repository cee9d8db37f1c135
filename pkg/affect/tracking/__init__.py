"""Recursive smoothing with an adaptively estimated forgetting factor."""

from affect.tracking.smoothing import SmoothedState, expanded_weights, smooth_update
from affect.tracking.block_model import BlockMoments, estimate_block_moments
from affect.tracking.forgetting import ForgettingEstimate, estimate_alpha, forgetting_factor
from affect.tracking.affect import AffectOptions, AffectTracker, StepResult, affect_step

__all__ = [
    "AffectOptions",
    "AffectTracker",
    "BlockMoments",
    "ForgettingEstimate",
    "SmoothedState",
    "StepResult",
    "affect_step",
    "estimate_alpha",
    "estimate_block_moments",
    "expanded_weights",
    "forgetting_factor",
    "smooth_update",
]
