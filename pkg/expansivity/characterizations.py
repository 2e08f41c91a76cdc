"""
Asymptotic pairs, transitivity, mixing and the limit-shadowing report.

On a finite discrete space every subset is open, so the open-set
definitions reduce to statements about single points; each property is
computed that way and by its closed form, and the two must agree.
"""
import logging
from dataclasses import dataclass

from systems.domain import is_injective
from systems.exceptions import ConsistencyError

logger = logging.getLogger(__name__)


def asymptotic_pairs(sys):
    """Unordered pairs {x, y}, x != y, whose orbits eventually coincide."""
    landing = [sys.iterate(x, sys.size) for x in range(sys.size)]
    return frozenset(
        frozenset((x, y))
        for x in range(sys.size)
        for y in range(x + 1, sys.size)
        if landing[x] == landing[y]
    )


def sorted_pairs(pairs):
    return sorted(tuple(sorted(pair)) for pair in pairs)


def _reaches(sys, x, y):
    """f^k(x) = y for some k >= 1."""
    point = x
    for _step in range(sys.size):
        point = sys.f(point)
        if point == y:
            return True
    return False


def _is_single_cycle(sys):
    if not is_injective(sys):
        return False
    return len(set(sys.iterate(0, k) for k in range(sys.size))) == sys.size


def is_transitive(sys):
    by_definition = all(_reaches(sys, x, y) for x in range(sys.size) for y in range(sys.size))
    by_permutation = _is_single_cycle(sys)
    if by_definition != by_permutation:
        raise ConsistencyError('transitivity: open-set definition and cycle characterization disagree')
    return by_definition


def is_mixing(sys):
    """f^k(x) = y for every x, y and all large k; only a single point can do that."""
    n = sys.size
    by_definition = all(
        all(sys.iterate(x, k) == y for k in range(n, 2 * n + 1))
        for x in range(n)
        for y in range(n)
    )
    if by_definition != (n == 1):
        raise ConsistencyError('mixing: definition and single-point characterization disagree')
    return by_definition


@dataclass(frozen=True)
class LimitShadowingReport:
    limit_shadowing: bool
    unique_limit: bool
    injective: bool
    asymptotic_pair_count: int

    def to_dict(self):
        return {
            'limit_shadowing': self.limit_shadowing,
            'unique_limit': self.unique_limit,
            'injective': self.injective,
            'asymptotic_pair_count': self.asymptotic_pair_count,
        }


def limit_shadowing_report(sys):
    """
    Limit shadowing always holds on a finite space (asymptotic pseudo-orbits
    are eventually true orbits); it is unique iff there are no asymptotic
    pairs, which on a finite space means f is injective.
    """
    pairs = asymptotic_pairs(sys)
    report = LimitShadowingReport(
        limit_shadowing=True,
        unique_limit=not pairs,
        injective=is_injective(sys),
        asymptotic_pair_count=len(pairs),
    )
    if report.unique_limit != report.injective:
        raise ConsistencyError('unique limit shadowing and injectivity disagree')
    return report
