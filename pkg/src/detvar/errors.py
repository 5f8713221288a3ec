"""Exception hierarchy shared by the engines and the CLI.

Every class carries a short machine-readable ``code`` and the process exit
status the CLI maps it to.
"""


class DetvarError(Exception):
    code = "error"
    exit_status = 1


class DomainError(DetvarError, ValueError):
    """Parameters outside the range where a formula is defined."""

    code = "domain"


class LengthMismatchError(DomainError):
    code = "length-mismatch"


class HypothesisError(DetvarError):
    """Inputs violate a theorem's standing hypothesis (e.g. the q regime)."""

    code = "hypothesis"


class MissingInvariantError(DetvarError):
    """A required user-supplied analytic invariant is absent."""

    code = "missing-invariant"

    def __init__(self, stratum, name):
        self.stratum = stratum
        self.name = name
        super().__init__(f"stratum i={stratum} is missing required invariant '{name}'")


class MalformedInputError(DetvarError):
    code = "malformed-input"
    exit_status = 2


class SchemaError(MalformedInputError):
    code = "schema"
