"""Exact spectral, logical and Weisfeiler-Leman isomorphism approximations for graphs."""

__version__ = "0.1.0"
