"""Exception hierarchy shared by every module."""


class SeparabilityError(Exception):
    """Base class for all errors raised by :mod:`puresep`."""


class ShapeError(SeparabilityError, ValueError):
    """Dimensions or amplitude counts do not fit together."""


class DegenerateStateError(SeparabilityError, ValueError):
    """The amplitude vector is (numerically) zero."""


class NotNormalizedError(SeparabilityError, ValueError):
    """A precondition requiring a unit-norm state was violated."""


class EntangledStateError(SeparabilityError):
    """An operation that needs a product state was given an entangled one."""


class NumericalFailure(SeparabilityError, ArithmeticError):
    """A numerical routine could not meet its accuracy contract.

    Attributes
    ----------
    fidelity : float or None
        Achieved reconstruction fidelity, when the failure is a factor
        extraction that fell short of its bound.
    """

    def __init__(self, message, fidelity=None):
        super().__init__(message)
        self.fidelity = fidelity


class CriteriaConflict(NumericalFailure):
    """Two separability criteria returned different verdicts.

    The criteria are equivalent in exact arithmetic, so a conflict always
    means the state sits on a tolerance boundary.

    Attributes
    ----------
    pair : tuple of str
        Names of the two disagreeing criteria.
    verdicts : dict
        Every verdict computed, keyed by criterion name.
    """

    def __init__(self, pair, verdicts):
        a, b = pair
        super().__init__(
            f"criteria disagree: {a} says "
            f"{'separable' if verdicts[a].separable else 'entangled'}, {b} says "
            f"{'separable' if verdicts[b].separable else 'entangled'}"
        )
        self.pair = tuple(pair)
        self.verdicts = dict(verdicts)
