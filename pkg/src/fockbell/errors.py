"""Exception types raised by the simulator."""


class DegenerateState(ValueError):
    """Amplitudes too close to the zero vector to normalize."""


class NonHermitianOperator(ValueError):
    """An operator passed as an observable is not Hermitian."""


class ZeroProbabilityOutcome(ValueError):
    """Collapse requested onto an outcome that cannot occur."""


class BadGrid(ValueError):
    """A sweep grid is empty, malformed or outside the legal parameter range."""
