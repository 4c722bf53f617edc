"""
Geometric Normalization

Formal normal forms of planar maps with an elliptic fixed point: admissible
invariant foliations, their involutions, the geometric normal form and the
constructions that exhibit divergence at super-Liouville rotation numbers.
"""

__version__ = "0.1.0"
__author__ = "Geometric Normalization contributors"
__license__ = "GPL-3.0-or-later"

# Package metadata
__all__ = [
    "__version__",
    "__author__",
    "__license__",
]
