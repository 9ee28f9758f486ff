"""Gram matrices of multiparametric quon Fock space: determinants,
factorizations, and permutation-expanded inverses."""

__version__ = "0.1.0"
