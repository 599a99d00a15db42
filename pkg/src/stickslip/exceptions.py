"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates a documented invariant (e.g. non-positive price)."""


class AlignmentError(ValidationError):
    """Panel is not rectangular: a stock is missing a date, or dates clash."""


class DegenerateInputError(ValueError):
    """An estimator received input it cannot work with (empty range,
    zero variance, too-short series)."""


class DegenerateWindowError(DegenerateInputError):
    """A rolling window is constant where a spread is required; the message
    names the offending time index."""


class GridMismatchError(ValueError):
    """Error curve and noise envelope were built on different grids."""
