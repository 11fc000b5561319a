"""Coherent dynamics of two interacting particles in a quantum double well.

Thin Python layer over the C++ core: eigenstructure of the two-site
contact-interaction model, unitary time evolution, Shannon entropy,
concurrence, beat envelopes and the packaged reproduction scenarios.
"""

from ._qdw import *  # noqa: F401,F403
