"""Exception types shared across the package."""


class DataError(Exception):
    """Invalid input data: malformed CSV, bad label mapping, empty class."""


class InternalConsistencyError(Exception):
    """A computed quantity violated a structural guarantee of the method."""
