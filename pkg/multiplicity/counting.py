"""
Shadower multiplicity: n-shadowing, unique shadowing, unique h- and s-limit shadowing.
"""
import logging
from dataclasses import dataclass

from lattice.lattice import edge_lattice, monotone_sweep, pair_lattice
from shadowing.deciders import Decision, decide_forward, decide_h, decide_s_limit
from shadowing.graph import left_extendable, require_positive
from systems.conf import shadowlab_setting
from systems.rationals import UNBOUNDED

from .tuples import Lasso, TupleAutomaton, cycle_entry, cycle_through, find_lasso, path_to

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CountDecision:
    n: int
    epsilon: object
    delta: object
    holds: bool
    lasso: Lasso | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class CountReport:
    epsilon: object
    delta: object
    max_count: int
    at_least: bool = False
    lasso: Lasso | None = None

    def to_dict(self, sys):
        payload = {
            'epsilon': str(self.epsilon),
            'delta': str(self.delta),
            'max_count': {'at_least': self.max_count} if self.at_least else self.max_count,
        }
        if self.lasso is not None:
            payload['witness'] = self.lasso.to_dict(sys)
        return payload


def _require_n(n):
    if n < 1:
        raise ValueError(f'n must be at least 1, got {n}')


def count_at_most(sys, n, epsilon, delta, budget=None):
    """
    No infinite delta-pseudo-orbit is epsilon-shadowed by n+1 distinct points.

    Fails iff some initial tuple of n+1 distinct positions reaches a cycle
    of the tuple automaton; the lasso certifies eternal joint survival.
    """
    _require_n(n)
    require_positive('delta', delta)
    automaton = TupleAutomaton(sys, epsilon, delta, budget)
    graph, parents, order, _hit = automaton.explore(automaton.initial_states(n + 1))
    lasso = find_lasso(graph, parents, order)
    return CountDecision(n=n, epsilon=epsilon, delta=delta, holds=lasso is None, lasso=lasso)


def max_shadower_count(sys, epsilon, delta, cap=None, budget=None):
    """Largest m <= cap such that some delta-pseudo-orbit has m eternal epsilon-shadowers."""
    cap = cap or shadowlab_setting('COUNT_CAP')
    if cap < 1:
        raise ValueError(f'cap must be at least 1, got {cap}')
    lasso = None
    for k in range(1, cap):
        decision = count_at_most(sys, k, epsilon, delta, budget)
        if decision.holds:
            logger.debug('max shadower count at epsilon=%s delta=%s is %d', epsilon, delta, k)
            return CountReport(epsilon=epsilon, delta=delta, max_count=k, lasso=lasso)
        lasso = decision.lasso
    return CountReport(epsilon=epsilon, delta=delta, max_count=cap, at_least=True, lasso=lasso)


def n_shadow_modulus(sys, n, epsilon, budget=None):
    """sup{delta : shadowing holds and no pseudo-orbit has more than n shadowers}."""
    _require_n(n)
    require_positive('epsilon', epsilon)

    def predicate(delta):
        return decide_forward(sys, epsilon, delta, budget).holds and count_at_most(
            sys, n, epsilon, delta, budget
        ).holds

    return monotone_sweep(edge_lattice(sys), predicate)


@dataclass(frozen=True)
class UniqueHDecision:
    epsilon: object
    delta: object
    holds: bool
    witness: tuple[int, ...] = ()
    origins: tuple[int, ...] = ()
    h_holds: bool = True

    def __bool__(self):
        return self.holds


def decide_unique_h(sys, epsilon, delta, budget=None):
    """
    h-shadowing holds and no finite pseudo-orbit has two distinct exact-hit shadowers.

    The second part explores pairs of trackers with distinct origins and
    fails when both land on the current node.
    """
    h = decide_h(sys, epsilon, delta, budget)
    if not h.holds:
        return UniqueHDecision(epsilon, delta, False, witness=h.witness, h_holds=False)
    automaton = TupleAutomaton(sys, epsilon, delta, budget)

    def both_hit(state):
        return state.positions == (state.node, state.node)

    _graph, parents, _order, hit = automaton.explore(automaton.initial_states(2), stop=both_hit)
    if hit is None:
        return UniqueHDecision(epsilon, delta, True)
    path = path_to(parents, hit)
    return UniqueHDecision(
        epsilon, delta, False, witness=tuple(s.node for s in path), origins=path[0].positions,
    )


@dataclass(frozen=True)
class UniqueSLimitDecision:
    """
    Unique shadowing together with s-limit shadowing at (epsilon, delta).

    On failure exactly one of `s_limit` (a failing s-limit Decision) and
    `count` (a CountDecision with its lasso) is set.
    """
    epsilon: object
    delta: object
    holds: bool
    s_limit: Decision | None = None
    count: CountDecision | None = None

    def __bool__(self):
        return self.holds


def decide_unique_s_limit(sys, epsilon, delta, budget=None):
    """
    Every delta-pseudo-orbit has exactly one epsilon-shadower and every
    asymptotic one is asymptotically shadowed.

    s-limit shadowing already implies shadowing, so the property is
    decide_s_limit together with count_at_most(1).
    """
    s_limit = decide_s_limit(sys, epsilon, delta, budget)
    if not s_limit.holds:
        return UniqueSLimitDecision(epsilon, delta, False, s_limit=s_limit)
    count = count_at_most(sys, 1, epsilon, delta, budget)
    if not count.holds:
        return UniqueSLimitDecision(epsilon, delta, False, count=count)
    return UniqueSLimitDecision(epsilon, delta, True)


def unique_s_limit_modulus(sys, epsilon, budget=None):
    """sup{delta : decide_unique_s_limit holds}; both conjuncts are antitone in delta."""
    require_positive('epsilon', epsilon)
    return monotone_sweep(
        edge_lattice(sys), lambda delta: decide_unique_s_limit(sys, epsilon, delta, budget).holds,
    )


def two_sided_count_at_most(sys, n, epsilon, delta, budget=None):
    """
    No two-sided delta-pseudo-orbit is epsilon-shadowed by n+1 distinct two-sided orbits.

    Distinct two-sided orbits stay distinct, so trackers are kept as sets on
    which f must remain injective. Starting from left-extendable nodes, a
    bi-infinite run of the set automaton exists iff it has a cycle.
    """
    _require_n(n)
    require_positive('delta', delta)
    automaton = TupleAutomaton(sys, epsilon, delta, budget, distinct=True)
    nodes = left_extendable(automaton.graph)
    graph, parents, order, _hit = automaton.explore(automaton.initial_states(n + 1, nodes))
    entry = cycle_entry(graph, order)
    lasso = None
    if entry is not None:
        loop = cycle_through(graph, entry)
        lasso = Lasso(stem=(), cycle=tuple(s.node for s in loop), origins=entry.positions)
    return CountDecision(n=n, epsilon=epsilon, delta=delta, holds=lasso is None, lasso=lasso)


def trivial_eta(sys):
    """
    Below the smallest positive pairwise distance every epsilon-ball is a
    singleton, so each pseudo-orbit has at most one shadower: that distance
    witnesses the eta of n-shadowing for every n.
    """
    smallest = pair_lattice(sys).min_positive
    return smallest if smallest is not None else UNBOUNDED

