"""Exception types shared across the package."""


class NotLieError(ValueError):
    """A candidate structure tensor fails the Jacobi identity."""


class UnsupportedFormError(ValueError):
    """Input is not in (or reducible to) a catalogued normal form."""


class IncompatibleDirectionError(ValueError):
    """A deformation direction is not compatible with the base structure.

    Carries the nonzero pairing vector in ``pairing``.
    """

    def __init__(self, message, pairing):
        super().__init__(message)
        self.pairing = tuple(pairing)


class StratumCrossingError(ValueError):
    """A deformation path changes isomorphism type among nonzero parameters."""
