"""Cross-ratio surfaces, their symmetry groups and the Pochhammer contours of B4 and B5."""

__version__ = "0.1.0"
