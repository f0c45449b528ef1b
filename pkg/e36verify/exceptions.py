"""Exception hierarchy for e36verify.

Library code raises these; the command line catches ``E36Error`` and turns it into a
logged message and a non-zero exit.
"""


class E36Error(Exception):
    """Base class of every error raised by e36verify."""


class CompositionNotZero(E36Error):
    """Two consecutive differentials do not compose to zero."""


class PoleAtLimitPoint(E36Error):
    """A cleared character still has a pole where the size limit is taken."""


class NotInCatalogSpan(E36Error):
    """A bracket left the span of the named generator catalog."""


class NotDefinedHere(E36Error):
    """An operator has no arrow at the requested source position."""


class SourceMismatch(E36Error):
    """A vector does not lie in the source component of an operator."""


class ParamsOutOfRange(E36Error):
    """Family parameters outside the range where the family is defined."""


class NotDegenerate(E36Error):
    """A module label does not sit on the degenerate grid."""


class InconsistentDecomposition(E36Error):
    """Highest-weight counting disagrees with the total dimension."""


class NoStabilization(E36Error):
    """Spectral sequence pages did not stabilize within the allowed number of steps."""


class UnknownSuite(E36Error):
    """Requested suite name is not registered."""


class InvalidConfig(E36Error):
    """Configuration file or values are invalid."""


class CacheCorrupt(E36Error):
    """A cache entry failed its content-hash check."""
