"""Discriminant residual analysis for image-set classification."""

__version__ = "1.0.0"
