"""Hilbertian operator spaces H_n^k and their anti-symmetric Fock-space realization."""

__version__ = "0.1.0"
