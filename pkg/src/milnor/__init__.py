"""Image Milnor numbers and 0-stable invariants of weighted-homogeneous map-germs."""

from .grading import Grading, chern_data, slice_grading, unfold_trivial
from .invariants import INFINITE, UNKNOWN, invariant_report, mu_image, zero_stable

__version__ = "0.1.0"

__all__ = [
    "Grading",
    "INFINITE",
    "UNKNOWN",
    "chern_data",
    "invariant_report",
    "mu_image",
    "slice_grading",
    "unfold_trivial",
    "zero_stable",
]
