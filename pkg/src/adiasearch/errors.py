"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument is outside its documented domain."""


class ResourceLimitError(RuntimeError):
    """A dense full-space operation was requested above the size guard."""


class NumericDegeneracyError(ArithmeticError):
    """A closed-form expression hit a degenerate denominator."""


class FormulaInconsistencyError(ArithmeticError):
    """A quoted closed form produced a numerically inconsistent result."""


class DivergentRuntimeError(ArithmeticError):
    """The large-N runtime limit does not exist for this driving profile."""


class ProfileEndpointWarning(UserWarning):
    """The driving coefficient does not vanish at s=1, so the final
    Hamiltonian is not the plain marked-state Hamiltonian."""
