# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Exceptions raised by the library and mapped to exit codes by the CLI.
"""


class WignerError(Exception):
    """Base class of all errors raised by this package."""


class DomainError(WignerError, ValueError):
    """A precondition on a physical quantity does not hold."""


class ConsistencyError(WignerError):
    """A matrix that should be a Lorentz transform is not one."""


class NumericalError(WignerError, ArithmeticError):
    """A numerical procedure failed its own acceptance check."""


class ConfigError(WignerError):
    """Malformed sweep configuration."""


class ArgumentError(WignerError):
    """Nonsense arguments
    """
