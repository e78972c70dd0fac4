"""Bound states, expectation values and thermodynamics of the combined
Coulomb plus screened-exponential hyperbolic potential."""

__version__ = "0.1.0"
