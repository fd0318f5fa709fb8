"""Real zeros of Fourier transforms of indicator functions of balanced
planar domains, and the eigenvalue comparisons built on them."""

__version__ = "0.1.0"
