"""
Value lattices and the monotone sweep.

A strict-inequality property of a finite system can only change truth value
at a realized distance. Sweeping those distances (plus UNBOUNDED) therefore
computes the exact supremum of a threshold for which the property holds.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from django.db import models
from django.utils.translation import gettext_lazy as _

from systems.exceptions import ConsistencyError
from systems.rationals import UNBOUNDED, ZERO, Threshold

logger = logging.getLogger(__name__)


class LatticeKind(models.TextChoices):
    EDGE = 'edge', _('Values of d(f(x), y)')
    PAIR = 'pair', _('Values of d(x, y) for x != y')


@dataclass(frozen=True)
class ValueLattice:
    """Strictly increasing realized distances, kept as exact squares."""
    kind: str
    squares: tuple[Fraction, ...]

    @property
    def values(self):
        return tuple(Threshold(square) for square in self.squares)

    @property
    def positive_values(self):
        return tuple(Threshold(square) for square in self.squares if square > 0)

    @property
    def min_positive(self):
        """Smallest positive value, or None for a lattice without one."""
        positive = self.positive_values
        return positive[0] if positive else None

    def __len__(self):
        return len(self.squares)

    def __contains__(self, threshold):
        return threshold.square in self.squares

    def next_above(self, threshold):
        """The lattice value just above `threshold`, or UNBOUNDED past the largest."""
        if threshold.is_unbounded:
            return None
        for square in self.squares:
            if square > threshold.square:
                return Threshold(square)
        return UNBOUNDED

    def labels(self):
        return [str(value) for value in self.values]


def edge_lattice(sys):
    """Sorted distinct values of d(f(x), y) over all x, y; always contains 0."""
    sq = sys.sq
    squares = {sq[sys.f(x)][y] for x in range(sys.size) for y in range(sys.size)}
    return ValueLattice(kind=LatticeKind.EDGE, squares=tuple(sorted(squares)))


def pair_lattice(sys):
    """Sorted distinct values of d(x, y) over x != y."""
    sq = sys.sq
    squares = {sq[x][y] for x in range(sys.size) for y in range(x + 1, sys.size)}
    return ValueLattice(kind=LatticeKind.PAIR, squares=tuple(sorted(squares)))


def monotone_sweep(lattice, predicate, exhaustive=False):
    """
    Supremum of the thresholds at which an antitone predicate holds.

    The predicate is evaluated at UNBOUNDED first, then at the positive
    lattice values from the largest down, stopping at the first one where it
    holds. Returns UNBOUNDED, that value, or ZERO when even the smallest
    positive value fails.

    The default mode trusts monotonicity and never raises on a non-monotone
    predicate; it returns the largest value where the predicate holds. With
    exhaustive=True every value is evaluated and a predicate that holds
    above a failing value raises ConsistencyError.
    """
    if exhaustive:
        return _exhaustive_sweep(lattice, predicate)

    if predicate(UNBOUNDED):
        logger.debug('%s sweep: holds at unbounded', lattice.kind)
        return UNBOUNDED
    for value in reversed(lattice.positive_values):
        if predicate(value):
            logger.debug('%s sweep: supremum %s', lattice.kind, value)
            return value
    logger.debug('%s sweep: fails at every positive value', lattice.kind)
    return ZERO


def _exhaustive_sweep(lattice, predicate):
    observations = [(value, bool(predicate(value))) for value in lattice.positive_values]
    observations.append((UNBOUNDED, bool(predicate(UNBOUNDED))))
    result = ZERO
    failed_at = None
    for value, holds in observations:
        if holds:
            if failed_at is not None:
                raise ConsistencyError(
                    f'non-monotone predicate on the {lattice.kind} lattice: '
                    f'fails at {failed_at} but holds at {value}'
                )
            result = value
        elif failed_at is None:
            failed_at = value
    return result
