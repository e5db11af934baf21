"""Desk-scale combinatorics of measurable realizations of abstract systems
of congruences.

Submodules:

* :mod:`acs.core` -- congruence systems on proper subsets of ``{0..n-1}``.
* :mod:`acs.words` -- free-product presentations, labelings, bad words.
* :mod:`acs.graphs` -- finite graphs, Cayley balls, nets.
* :mod:`acs.decomp` -- spindly trees and path decompositions.
* :mod:`acs.realize` -- realizations on action graphs.
* :mod:`acs.colorings` -- unfriendly colorings, matchings, list edge-colorings.
* :mod:`acs.cfrac` -- quadratic surds, continued fractions, Moebius maps.
* :mod:`acs.psl2` -- orbit balls and realizations in the modular group.
* :mod:`acs.cli` -- the ``acs`` command.
"""

__version__ = "0.1.0"


class ACSError(Exception):
    """Base class for all errors raised by this package."""


class CapacityError(ACSError):
    pass


class GenerationError(ACSError):
    pass


class PreconditionError(ACSError):
    pass
