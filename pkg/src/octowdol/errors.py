"""Exception types shared across the package."""


class SingularParameterError(ValueError):
    """A linear canonical parameter set with ``b == 0``."""


class GridMismatchError(ValueError):
    """Signals or fields sampled on incompatible grids."""


class SampleError(ValueError):
    """A non-finite sample."""


class SignalFormatError(ValueError):
    """A signal or field file that does not parse."""


class ReconstructionError(ValueError):
    """Reconstruction is impossible, e.g. the window vanishes at the origin."""
