class TreeError(Exception):
    """Base class for errors raised by the trees in this package."""


class DuplicateKey(TreeError, ValueError):
    pass


class NotFound(TreeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class WrongVariant(TreeError, ValueError):
    """Raised when a min-heap query is issued against a max-heap tree."""
