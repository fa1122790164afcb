"""Exception types shared across the package."""


class MeaseqError(Exception):
    """Base class for all package errors."""


class CapacityError(MeaseqError):
    """A configured size limit was exceeded (chain too short, term blowup, atom cap)."""


class SpecificationError(MeaseqError):
    """A generator spec is inconsistent or incomplete (missing prime, overlapping parts)."""


class WindowRangeError(MeaseqError):
    """An index or length does not fit the window it is applied to."""


class DomainError(MeaseqError):
    """A supplied function is undefined (or non-finite) on the required range."""


class DiagnosticError(MeaseqError):
    """The window is too small for the requested analysis to be meaningful."""


class DegenerateWindowError(MeaseqError):
    """A window has zero dispersion where a spread is required.

    `which` names the offending input argument.
    """

    def __init__(self, which: str):
        super().__init__(f"window {which!r} has zero dispersion")
        self.which = which


class GateError(MeaseqError):
    """An experiment precondition (independence, moment, u.d. gate) failed."""


class ResolutionError(MeaseqError):
    """No ladder level is fine enough for the requested evaluation.

    `needed` carries the modulus that would have been required, when known.
    """

    def __init__(self, msg: str, needed: int | None = None):
        super().__init__(msg)
        self.needed = needed


class ContinuityBudgetError(MeaseqError):
    """No ladder level met the exceptional-set budget.

    Carries the best (level, fraction) pair found during the search.
    """

    def __init__(self, best_level: int, best_fraction: float):
        super().__init__(
            f"no level met the budget; best level {best_level} "
            f"leaves fraction {best_fraction:.6g}"
        )
        self.best_level = best_level
        self.best_fraction = best_fraction


class ConfigError(MeaseqError):
    """A CLI run config does not validate."""
