"""Minimum distance of sparse stabilizer codes by linked-cluster enumeration."""

__version__ = "0.1.0"
