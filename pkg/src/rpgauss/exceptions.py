"""Exception types shared across the package."""


class DegenerateSeriesError(ValueError):
    """The series is constant (or otherwise degenerate) so the statistic is undefined."""


class NumericalError(RuntimeError):
    """A numerical routine produced an unusable result (non-finite objective,
    negative quadratic form beyond tolerance, excessive simulation failures)."""
