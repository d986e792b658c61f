"""Exception types shared across the package."""


class DuomapError(Exception):
    """Base class for all duomap errors."""


class ParseError(DuomapError):
    """Malformed instance file."""


class ValidationError(DuomapError):
    """Instance fails the permutation or occurrence-bound checks."""

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(str(v) for v in self.violations) or "invalid instance"
        super().__init__(msg)


class BudgetError(DuomapError):
    """A configured size or time budget was exceeded."""


class ReductionError(DuomapError):
    """A reduction step was applied to a graph violating its precondition."""


class LiftError(DuomapError):
    """Lifting a solution through a contraction record failed."""
