"""
Gamma sets: the points whose orbits stay within r of the orbit of x.
"""
from dataclasses import dataclass

from django.db import models
from django.utils.translation import gettext_lazy as _

from shadowing.graph import require_positive
from systems.exceptions import NoTwoSidedOrbitError

from .core import surjective_core


class GammaMode(models.TextChoices):
    POSITIVE = 'positive', _('Forward orbits')
    TWO_SIDED = 'twosided', _('Two-sided orbits')


@dataclass(frozen=True)
class GammaSet:
    center: int
    radius: object
    members: frozenset
    mode: str = GammaMode.POSITIVE

    def __len__(self):
        return len(self.members)

    def to_dict(self, sys):
        return {
            'center': sys.labels[self.center],
            'radius': str(self.radius),
            'mode': str(self.mode),
            'members': [sys.labels[y] for y in sorted(self.members)],
        }


def stays_within(sys, x, y, r):
    """d(f^k x, f^k y) < r for every k >= 0, by cycle detection on the pair orbit."""
    seen = set()
    pair = (x, y)
    while pair not in seen:
        a, b = pair
        if not r.admits(sys.sq[a][b]):
            return False
        seen.add(pair)
        pair = (sys.f(a), sys.f(b))
    return True


def stays_within_horizon(sys, x, y, r):
    """Same test with the crude |X|^2 horizon."""
    a, b = x, y
    for _step in range(sys.size ** 2 + 1):
        if not r.admits(sys.sq[a][b]):
            return False
        a, b = sys.f(a), sys.f(b)
    return True


def gamma_plus(sys, x, r, crude=False):
    require_positive('r', r)
    test = stays_within_horizon if crude else stays_within
    members = frozenset(y for y in range(sys.size) if test(sys, x, y, r))
    return GammaSet(center=x, radius=r, members=members, mode=GammaMode.POSITIVE)


def gamma_two_sided(sys, x, r, core=None):
    """
    Two-sided Gamma set of a core point.

    f permutes the core, so a core point has exactly one two-sided orbit and
    only core points have any; forward tracking of that periodic orbit
    decides membership.
    """
    require_positive('r', r)
    core = surjective_core(sys).core if core is None else core
    if x not in core:
        raise NoTwoSidedOrbitError(f'point {sys.labels[x]!r} has no two-sided orbit')
    members = frozenset(y for y in core if stays_within(sys, x, y, r))
    return GammaSet(center=x, radius=r, members=members, mode=GammaMode.TWO_SIDED)
