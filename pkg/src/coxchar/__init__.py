"""Exact computations with Solomon's descent algebra and Orlik-Solomon characters."""

__version__ = "0.1.0"
