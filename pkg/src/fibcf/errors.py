"""Exceptions shared across the package."""


class ResourceLimitError(RuntimeError):
    """A hard resource cap was hit (word materialization, convergent depth,
    or precision-escalation budget)."""


class UndecidedError(RuntimeError):
    """A comparison could not be decided within the escalation budget.

    ``items`` carries whatever could not be separated: candidate tuples for
    search ties, row indices for table fits.
    """

    def __init__(self, message, items=()):
        super().__init__(message)
        self.items = tuple(items)
