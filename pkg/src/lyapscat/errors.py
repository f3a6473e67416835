"""Exception types shared across the library.

Three failure classes are distinguished so that callers (and the CLI) can
map them to different exit codes: bad scalar arguments, incompatible
objects, and numerically unresolvable configurations.
"""


class ParameterError(ValueError):
    """A scalar argument is out of range (n too small, negative width, ...)."""


class UsageError(ValueError):
    """Objects passed together do not belong together (grid or representation
    mismatch, operator applied across grids, ...)."""


class PreconditionError(ValueError):
    """The configuration is formally valid but numerically unresolvable on
    the requested grid (resonance narrower than the node spacing, resonance
    energy too close to the truncation edge, ...)."""
