"""Exact-arithmetic topological vertex engine for local Hirzebruch surfaces.

Computes stable-pairs (PT) and Gromov-Witten generating series of
K_{F_r}, reconstructs them as exact rational functions, and certifies
their q- and Q-functional equations.
"""

from .partitions import Partition, partitions_of, partition_count
from .qfield import QRat, QFieldError
from .series import GaussianRational, SeriesError, TruncSeries
from .vertex import SCache, ToricSurface, VertexError, pt_invariants, pt_series
from .rationality import FitError, RationalFit, fit_rational, normalized_pt
from .gwtheory import GWTable, RealityError, gw_extract, tilde_pt0, verify_R

__version__ = "0.1.0"

__all__ = [
    "Partition",
    "partitions_of",
    "partition_count",
    "QRat",
    "QFieldError",
    "GaussianRational",
    "SeriesError",
    "TruncSeries",
    "SCache",
    "ToricSurface",
    "VertexError",
    "pt_invariants",
    "pt_series",
    "FitError",
    "RationalFit",
    "fit_rational",
    "normalized_pt",
    "GWTable",
    "RealityError",
    "gw_extract",
    "tilde_pt0",
    "verify_R",
    "__version__",
]
