"""Prism manifolds P(p, q), 0 < q < p, from positive integral surgery on knots."""

__version__ = "0.1.0"
