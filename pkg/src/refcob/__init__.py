"""Refined divisor classes and intersections on SNC frames, over the rational Lazard model."""
from .fgl import FglContext, formal_sum, j_decompose, make_context
from .omega import FaceClass, chern, divisor_class, intersect, normalize
from .series import LazardPoly, Series
from .snc import BundleExpr, CartierDiv, PseudoDiv, SncConfig, frame

__all__ = [
    "BundleExpr",
    "CartierDiv",
    "FaceClass",
    "FglContext",
    "LazardPoly",
    "PseudoDiv",
    "Series",
    "SncConfig",
    "chern",
    "divisor_class",
    "formal_sum",
    "frame",
    "intersect",
    "j_decompose",
    "make_context",
    "normalize",
]
