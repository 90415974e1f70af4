"""cyclezeta: finite spectral zeta and L-sums on cycle graphs."""

__version__ = "0.1.0"
