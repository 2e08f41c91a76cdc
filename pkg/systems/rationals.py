"""
Exact numerics for ShadowLab.

Every distance comparison in the analyzer is made between squared distances
and squared thresholds, both exact rationals. A Threshold therefore keeps
its square; Euclidean distances such as sqrt(2) stay exact without ever
being materialized.
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .exceptions import DocumentError

RATIONAL_RE = re.compile(r'^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$')
SQRT_RE = re.compile(r'^sqrt\((.+)\)$')
UNBOUNDED_TEXT = 'unbounded'


def parse_rational(text, field=None):
    """
    Parse a canonical "p/q" (or "n") string into a Fraction.

    Canonical means lowest terms, positive denominator and no "-0"; "n/1"
    is accepted as the long form of "n".
    """
    if not isinstance(text, str):
        raise DocumentError(f'expected a rational string, got {type(text).__name__}', field=field)
    match = RATIONAL_RE.match(text)
    if not match:
        raise DocumentError(f'malformed rational {text!r}', field=field)
    sign, numerator, denominator = match.groups()
    if sign and numerator == '0':
        raise DocumentError(f'non-canonical rational {text!r}', code='non_canonical', field=field)
    if denominator is None:
        return Fraction(int(sign + numerator))
    numerator, denominator = int(numerator), int(denominator)
    if math.gcd(numerator, denominator) != 1:
        raise DocumentError(f'non-canonical rational {text!r}', code='non_canonical', field=field)
    return Fraction(-numerator if sign else numerator, denominator)


def format_rational(value):
    """Canonical text of a Fraction: "n" for integers, "p/q" otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def rational_sqrt(value):
    """Exact square root of a nonnegative Fraction, or None when it is irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


@total_ordering
@dataclass(frozen=True)
class Threshold:
    """
    A nonnegative exact threshold (epsilon, delta, r, eta) or UNBOUNDED.

    `square` is the exact square of the threshold; None encodes UNBOUNDED,
    which compares greater than every finite threshold.
    """
    square: Fraction | None

    @classmethod
    def of(cls, value):
        value = Fraction(value)
        if value < 0:
            raise ValueError(f'threshold must be nonnegative, got {value}')
        return cls(value * value)

    @classmethod
    def from_square(cls, square):
        square = Fraction(square)
        if square < 0:
            raise ValueError(f'squared threshold must be nonnegative, got {square}')
        return cls(square)

    @property
    def is_unbounded(self):
        return self.square is None

    @property
    def is_positive(self):
        return self.square is None or self.square > 0

    @property
    def value(self):
        """The threshold as a Fraction when it is rational, else None."""
        if self.square is None:
            return None
        return rational_sqrt(self.square)

    def admits(self, squared_distance):
        """Strict test d < t on squares."""
        return self.square is None or squared_distance < self.square

    def scaled(self, factor):
        """t * factor, exact (factor is a nonnegative rational)."""
        if self.square is None:
            return self
        factor = Fraction(factor)
        return Threshold(self.square * factor * factor)

    def __lt__(self, other):
        if not isinstance(other, Threshold):
            return NotImplemented
        if self.square is None:
            return False
        if other.square is None:
            return True
        return self.square < other.square

    def __str__(self):
        return format_threshold(self)


UNBOUNDED = Threshold(None)
ZERO = Threshold(Fraction(0))


def format_threshold(threshold):
    if threshold.is_unbounded:
        return UNBOUNDED_TEXT
    root = threshold.value
    if root is not None:
        return format_rational(root)
    return f'sqrt({format_rational(threshold.square)})'


def parse_threshold(text, field=None):
    """Inverse of format_threshold: "unbounded", "p/q" or "sqrt(p/q)"."""
    if text == UNBOUNDED_TEXT:
        return UNBOUNDED
    if isinstance(text, str):
        match = SQRT_RE.match(text)
        if match:
            square = parse_rational(match.group(1), field=field)
            if square < 0:
                raise DocumentError(f'negative square in {text!r}', field=field)
            return Threshold.from_square(square)
    value = parse_rational(text, field=field)
    if value < 0:
        raise DocumentError(f'threshold must be nonnegative, got {text!r}', field=field)
    return Threshold.of(value)
