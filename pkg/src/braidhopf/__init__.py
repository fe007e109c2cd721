"""Exact-arithmetic toolkit for Hopf algebras in braided monoidal categories.

Builds the cyclic-style tower attached to a Hopf algebra with a modular
pair (character, group-like element), checks the simplicial and cyclic
relations by bit-exact matrix equality, and computes cyclic homology of
the resulting complexes over exact coefficient fields.
"""

__version__ = "0.1.0"
