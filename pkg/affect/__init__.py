"""
Adaptive evolutionary clustering.

Tracks a time-varying true proximity matrix by shrinkage smoothing with an
adaptively estimated forgetting factor, then applies static clustering to
the smoothed matrix.
"""

__version__ = "0.1.0"
