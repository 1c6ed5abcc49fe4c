"""Exact construction of Chevalley groups from Dynkin quiver and root data."""

__version__ = "0.1.0"
