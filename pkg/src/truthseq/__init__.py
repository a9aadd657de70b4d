"""Proof kernel and proof transformations for sequent calculi of
axiomatic truth, with four-valued and fixed-point semantic oracles."""

__version__ = "0.1.0"
