"""Planar functions in characteristic two and the algebra around them."""

__version__ = "0.1.0"
