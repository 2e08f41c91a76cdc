"""
Positive and two-sided n-expansivity radii.

positive_expansivity_radius(n) is the supremum of r with every Gamma_+(x, r)
holding at most n points. The two-sided radius quantifies over two-sided
orbits, decided by a tuple automaton and cross-checked against the
two-sided Gamma sets of the core.
"""
import itertools
import logging
from dataclasses import dataclass, field

from lattice.lattice import monotone_sweep, pair_lattice
from shadowing.graph import require_positive
from systems.conf import shadowlab_setting
from systems.domain import ball
from systems.exceptions import BudgetExceededError, ConsistencyError

from .core import surjective_core
from .gamma import GammaMode, gamma_plus, gamma_two_sided

logger = logging.getLogger(__name__)


def _require_n(n):
    if n < 1:
        raise ValueError(f'n must be at least 1, got {n}')


def largest_gamma(sys, r):
    """The Gamma_+ set of maximal size at radius r (lowest center on ties)."""
    return max((gamma_plus(sys, x, r) for x in range(sys.size)), key=len)


def is_positively_n_expansive_at(sys, n, r):
    _require_n(n)
    return len(largest_gamma(sys, r)) <= n


def positive_expansivity_radius(sys, n, exhaustive=False):
    _require_n(n)
    return monotone_sweep(
        pair_lattice(sys), lambda r: is_positively_n_expansive_at(sys, n, r), exhaustive=exhaustive,
    )


@dataclass(frozen=True)
class TwoSidedDecision:
    """Verdict of is_n_expansive_at; `witness` is (a, b_0, ..., b_n) on failure."""
    n: int
    radius: object
    holds: bool
    witness: tuple[int, ...] = ()
    vacuous: bool = False
    explored: int = 0

    def __bool__(self):
        return self.holds


def _tuple_survives(sys, start, r, budget, counter):
    """
    The coordinatewise orbit of `start` stays within r of its first
    coordinate forever and returns to `start` (so it extends backwards).
    """
    state = start
    seen = set()
    while state not in seen:
        counter[0] += 1
        if counter[0] > budget:
            logger.warning('tuple automaton exceeded its budget of %d states', budget)
            raise BudgetExceededError('tuple automaton', budget, counter[0])
        a, others = state
        if not all(r.admits(sys.sq[a][b]) for b in others):
            return False
        seen.add(state)
        state = (sys.f(a), tuple(sorted(sys.f(b) for b in others)))
    return state == start


def is_n_expansive_at(sys, n, r, budget=None):
    """
    Whether every two-sided orbit's r-neighbourhood set holds at most n points.

    Fails iff some (a, b_0 < ... < b_n) with all d(a, b_i) < r has a
    coordinatewise orbit that stays allowed and is periodic.
    """
    _require_n(n)
    require_positive('r', r)
    budget = budget or shadowlab_setting('TUPLE_BUDGET')
    core = surjective_core(sys).core
    vacuous = len(core) <= n
    counter = [0]
    witness = ()
    for a in range(sys.size):
        near = sorted(ball(sys, a, r))
        for others in itertools.combinations(near, n + 1):
            if _tuple_survives(sys, (a, others), r, budget, counter):
                witness = (a, *others)
                break
        if witness:
            break

    by_gamma = all(len(gamma_two_sided(sys, x, r, core=core)) <= n for x in core)
    if by_gamma != (not witness):
        raise ConsistencyError(f'tuple automaton and two-sided Gamma sets disagree at n={n}, r={r}')
    return TwoSidedDecision(
        n=n, radius=r, holds=not witness, witness=witness, vacuous=vacuous, explored=counter[0],
    )


def n_expansivity_radius(sys, n, budget=None, exhaustive=False):
    _require_n(n)
    return monotone_sweep(
        pair_lattice(sys), lambda r: is_n_expansive_at(sys, n, r, budget).holds, exhaustive=exhaustive,
    )


@dataclass(frozen=True)
class ExpansivityReport:
    mode: str
    n: int
    radius: object
    vacuous: bool = False
    failing_radius: object = None
    witness: tuple[int, ...] = field(default_factory=tuple)

    def to_dict(self, sys):
        payload = {
            'mode': str(self.mode),
            'n': self.n,
            'radius': str(self.radius),
            'vacuous': self.vacuous,
        }
        if self.failing_radius is not None:
            payload['failing_radius'] = str(self.failing_radius)
            payload['witness'] = [sys.labels[x] for x in self.witness]
        return payload


def expansivity_report(sys, mode, n, budget=None):
    """Radius plus the violating set just above it; two-sided vacuity is flagged."""
    lattice = pair_lattice(sys)
    if mode == GammaMode.POSITIVE:
        radius = positive_expansivity_radius(sys, n)
        vacuous = False
    else:
        radius = n_expansivity_radius(sys, n, budget)
        vacuous = len(surjective_core(sys).core) <= n
    if radius.is_unbounded:
        if vacuous:
            logger.info('two-sided %d-expansivity is vacuous: the core has at most %d points', n, n)
        return ExpansivityReport(mode=mode, n=n, radius=radius, vacuous=vacuous)
    above = lattice.next_above(radius)
    if mode == GammaMode.POSITIVE:
        witness = tuple(sorted(largest_gamma(sys, above).members))
    else:
        witness = is_n_expansive_at(sys, n, above, budget).witness
    return ExpansivityReport(
        mode=mode, n=n, radius=radius, vacuous=vacuous, failing_radius=above, witness=witness,
    )

