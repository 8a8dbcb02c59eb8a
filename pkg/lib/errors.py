''' exception hierarchy shared by the library and the command line tool '''
from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    severity: str = 'error'

    def is_error(self):
        return self.severity == 'error'

    def __str__(self):
        return '[%s] %s: %s' % (self.severity, self.kind, self.message)


class SwitchboardError(Exception):
    """Base class of all errors raised by switchboard."""
    exit_code = 3


class ConfigParseError(SwitchboardError, ValueError):
    """Unreadable or malformed input: missing files, bad YAML, bad literals."""
    exit_code = 1


class SetupValidationError(SwitchboardError, ValueError):
    """Input that parses but breaks the model's rules.

    Args:
        message (str): Summary.
        violations (list[Violation]): The individual findings, if any.
    """
    exit_code = 2

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)

    def __str__(self):
        lines = [super().__str__()]
        lines += ['  ' + str(v) for v in self.violations]
        return '\n'.join(lines)


class CapExceededError(SetupValidationError):
    """A size limit (state modes, oracle sources) was exceeded."""


class NumericalError(SwitchboardError, ArithmeticError):
    """A computation produced no usable number or missed its tolerance."""
    exit_code = 3


class ZeroNormError(NumericalError):
    pass
