"""Exact computations for the zigzag-algebra braid action and its LKB decategorification."""

__version__ = "0.1.0"
