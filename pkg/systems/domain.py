"""
Finite system data model.

A FiniteSystem is the compact system (X, f) at desk scale: a point table,
a metric given either by rational coordinates (Euclidean) or by an explicit
table of squared distances, and the self-map as an image array. Point order
defines PointId and is preserved everywhere.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from django.db import models
from django.utils.translation import gettext_lazy as _


class MetricType(models.TextChoices):
    """How squared distances are obtained."""
    EUCLIDEAN = 'euclidean', _('Euclidean (from coordinates)')
    MATRIX = 'matrix', _('Explicit squared-distance table')


@dataclass(frozen=True)
class Point:
    label: str
    coords: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class OrbitProfile:
    """x, f(x), ... until the first repeat; f^(preperiod+period)(x) = f^preperiod(x)."""
    preperiod: int
    period: int
    orbit: tuple[int, ...]

    @property
    def cycle(self):
        return self.orbit[self.preperiod:]


@dataclass(frozen=True)
class FiniteSystem:
    """
    Immutable finite system. Build it through the generators or load_system,
    then check it with validate_system before analysis.
    """
    points: tuple[Point, ...]
    images: tuple[int, ...]
    metric_type: str = MetricType.MATRIX
    sq_table: tuple[tuple[Fraction, ...], ...] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.points)

    @cached_property
    def sq(self):
        """Squared-distance matrix, derived once."""
        if self.metric_type == MetricType.MATRIX:
            return self.sq_table
        coords = [point.coords for point in self.points]
        return tuple(
            tuple(sum(((a - b) ** 2 for a, b in zip(u, v, strict=True)), Fraction(0)) for v in coords)
            for u in coords
        )

    @cached_property
    def labels(self):
        return tuple(point.label for point in self.points)

    @cached_property
    def label_index(self):
        return {label: index for index, label in enumerate(self.labels)}

    def index_of(self, label):
        try:
            return self.label_index[label]
        except KeyError:
            raise KeyError(f'no point labelled {label!r}') from None

    def f(self, x):
        return self.images[x]

    def iterate(self, x, k):
        for _ in range(k):
            x = self.images[x]
        return x

    @cached_property
    def preimages(self):
        fibers = [[] for _ in self.points]
        for x, y in enumerate(self.images):
            fibers[y].append(x)
        return tuple(tuple(fiber) for fiber in fibers)


def _check_id(sys, point):
    if not 0 <= point < sys.size:
        raise IndexError(f'point id {point} out of range for a system of {sys.size} points')


def squared_distance(sys, a, b):
    """Exact d(a, b)^2."""
    _check_id(sys, a)
    _check_id(sys, b)
    return sys.sq[a][b]


def ball(sys, center, radius):
    """{y : d(center, y) < radius}, strict."""
    _check_id(sys, center)
    row = sys.sq[center]
    return frozenset(y for y in range(sys.size) if radius.admits(row[y]))


def is_surjective(sys):
    return len(set(sys.images)) == sys.size


def is_injective(sys):
    return len(set(sys.images)) == len(sys.images)


def orbit_profile(sys, x):
    _check_id(sys, x)
    first_seen = {}
    orbit = []
    while x not in first_seen:
        first_seen[x] = len(orbit)
        orbit.append(x)
        x = sys.images[x]
    preperiod = first_seen[x]
    return OrbitProfile(preperiod=preperiod, period=len(orbit) - preperiod, orbit=tuple(orbit))
