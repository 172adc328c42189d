"""Exception types shared by all quadpres modules."""


class InputError(ValueError):
    """Bad arguments: unknown element ids, empty sets, dimension mismatches."""


class ValidationError(ValueError):
    """A structure violates a law it was required to satisfy.

    Carries a human-readable message naming the violated law and, where
    possible, a witness tuple in ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeGuardError(RuntimeError):
    """An exhaustive check would exceed its size guard; refused explicitly."""
