"""
Exception hierarchy for ShadowLab.

Document problems reuse Django's ValidationError so that messages, codes
and params behave the same way they do in forms; everything the engines
raise derives from ShadowLabError.
"""
from django.core.exceptions import ValidationError


class ShadowLabError(Exception):
    """Base class for analyzer errors."""


class DocumentError(ValidationError):
    """
    A system document that cannot be parsed, is not canonical, or fails validation.

    `field` is a JSON path such as ``points[2].coords[0]``; `line` is set when
    the JSON text itself is malformed.
    """

    def __init__(self, message, code='invalid', params=None, field=None, line=None):
        self.field = field
        self.line = line
        if field:
            message = f'{field}: {message}'
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message, code=code, params=params)

    def __str__(self):
        return self.message


class DegenerateThresholdError(ShadowLabError, ValueError):
    """A zero epsilon, delta or radius was passed where a positive one is required."""


class BudgetExceededError(ShadowLabError):
    """State exploration went past the configured budget."""

    def __init__(self, what, budget, explored):
        self.what = what
        self.budget = budget
        self.explored = explored
        super().__init__(f'{what}: explored {explored} states, budget is {budget}')


class ConsistencyError(ShadowLabError, AssertionError):
    """An internal cross-check disagreed; always an implementation bug."""


class GeneratorError(ShadowLabError, ValueError):
    """Generator parameters out of range, or a random metric could not be repaired."""


class UnknownSuiteError(ShadowLabError, KeyError):
    """Verification suite name not registered."""

    def __str__(self):
        return str(self.args[0]) if self.args else ''


class NoTwoSidedOrbitError(ShadowLabError, ValueError):
    """A two-sided quantity was requested at a point outside the surjective core."""
