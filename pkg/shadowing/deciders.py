"""
Exact shadowing deciders on finite systems.

Every decider explores the survivor automaton and either proves the
property at (epsilon, delta) or returns the node sequence of a shortest
failing pseudo-orbit.
"""
import logging
from dataclasses import dataclass

from django.db import models
from django.utils.translation import gettext_lazy as _

from expansivity.core import periodic_points
from systems.exceptions import ConsistencyError

from .automaton import SurvivorAutomaton
from .graph import lead_in, left_extendable

logger = logging.getLogger(__name__)


class Kind(models.TextChoices):
    FORWARD = 'forward', _('Shadowing')
    BACKWARD = 'backward', _('Backward shadowing')
    TWO_SIDED = 'twosided', _('Two-sided shadowing')
    H = 'h', _('h-shadowing')
    S_LIMIT = 'slimit', _('s-limit shadowing')
    TWO_SIDED_S_LIMIT = 'twosided-slimit', _('Two-sided s-limit shadowing')


LEFT_INFINITE_KINDS = (Kind.BACKWARD, Kind.TWO_SIDED, Kind.TWO_SIDED_S_LIMIT)


@dataclass(frozen=True)
class Decision:
    """
    Verdict of one decider at (epsilon, delta).

    `witness` is the failing finite pseudo-orbit. For left-infinite kinds
    `lead_cycle` and `lead_path` show how the witness is reached from the
    past: a delta-cycle through lead_path[0] and a walk ending at witness[0].
    """
    kind: str
    epsilon: object
    delta: object
    holds: bool
    witness: tuple[int, ...] = ()
    lead_cycle: tuple[int, ...] = ()
    lead_path: tuple[int, ...] = ()
    explored: int = 0

    def __bool__(self):
        return self.holds

    def to_dict(self, sys):
        labels = sys.labels
        payload = {
            'kind': str(self.kind),
            'epsilon': str(self.epsilon),
            'delta': str(self.delta),
            'holds': self.holds,
            'witness': [labels[x] for x in self.witness],
            'explored': self.explored,
        }
        if self.lead_cycle:
            payload['lead_in'] = {
                'cycle': [labels[x] for x in self.lead_cycle],
                'path': [labels[x] for x in self.lead_path],
            }
        return payload


def _decision(kind, automaton, result, with_lead_in=False):
    if not result.found:
        return Decision(kind, automaton.epsilon, automaton.delta, True, explored=result.explored)
    witness = result.nodes
    cycle, path = ((), ())
    if with_lead_in:
        cycle, path = lead_in(automaton.graph, witness[0])
    return Decision(
        kind, automaton.epsilon, automaton.delta, False,
        witness=witness, lead_cycle=cycle, lead_path=path, explored=result.explored,
    )


def _is_empty(state):
    return state[1] == 0


def _misses_node(state):
    node, mask = state
    return not mask >> node & 1


def decide_forward(sys, epsilon, delta, budget=None):
    automaton = SurvivorAutomaton(sys, epsilon, delta, budget)
    initials = [automaton.initial(x) for x in range(sys.size)]
    return _decision(Kind.FORWARD, automaton, automaton.search(initials, _is_empty))


def _left_extendable_search(sys, epsilon, delta, budget, prune):
    automaton = SurvivorAutomaton(sys, epsilon, delta, budget)
    nodes = sorted(left_extendable(automaton.graph))
    initials = [automaton.initial(u) for u in nodes]
    return automaton, automaton.search(initials, _is_empty, prune=prune)


def _cross_checked(sys, epsilon, delta, budget):
    pruned = _left_extendable_search(sys, epsilon, delta, budget, prune=True)
    unpruned = _left_extendable_search(sys, epsilon, delta, budget, prune=False)
    if pruned[1].found != unpruned[1].found:
        raise ConsistencyError(
            f'backward and two-sided verdicts disagree at epsilon={epsilon}, delta={delta}'
        )
    return pruned, unpruned


def decide_backward(sys, epsilon, delta, budget=None):
    """Every backward delta-pseudo-orbit is epsilon-shadowed by a backward orbit."""
    (automaton, result), _ = _cross_checked(sys, epsilon, delta, budget)
    return _decision(Kind.BACKWARD, automaton, result, with_lead_in=True)


def decide_two_sided(sys, epsilon, delta, budget=None):
    """
    Every two-sided delta-pseudo-orbit is epsilon-shadowed by a two-sided orbit.

    On a finite system this coincides with backward shadowing; the verdict
    comes from an unpruned exploration and is checked against the pruned one.
    """
    _, (automaton, result) = _cross_checked(sys, epsilon, delta, budget)
    return _decision(Kind.TWO_SIDED, automaton, result, with_lead_in=True)


def decide_h(sys, epsilon, delta, budget=None):
    """Finite pseudo-orbits have a shadower landing exactly on the last point."""
    automaton = SurvivorAutomaton(sys, epsilon, delta, budget)
    initials = [automaton.initial(x) for x in range(sys.size)]
    return _decision(Kind.H, automaton, automaton.search(initials, _misses_node))


def decide_s_limit(sys, epsilon, delta, budget=None):
    """
    Asymptotic pseudo-orbits are asymptotically shadowed.

    On a finite space an asymptotic pseudo-orbit is eventually a true orbit
    and asymptotic tracking means eventual coincidence. The property fails
    when some reachable state, continued along the true orbit of its node,
    never has the node among its survivors.
    """
    automaton = SurvivorAutomaton(sys, epsilon, delta, budget)
    initials = [automaton.initial(x) for x in range(sys.size)]
    return _decision(Kind.S_LIMIT, automaton, automaton.search(initials, automaton.never_hits))


def decide_two_sided_s_limit(sys, epsilon, delta, budget=None):
    """
    Two-sided asymptotic pseudo-orbits are asymptotically shadowed in both directions.

    Their far past is a periodic true orbit, followed exactly by the
    shadower, so exploration starts from (p, {p}) for every periodic p.
    Two-sided shadowing must hold as well.
    """
    two_sided = decide_two_sided(sys, epsilon, delta, budget)
    if not two_sided.holds:
        return Decision(
            Kind.TWO_SIDED_S_LIMIT, epsilon, delta, False,
            witness=two_sided.witness, lead_cycle=two_sided.lead_cycle,
            lead_path=two_sided.lead_path, explored=two_sided.explored,
        )
    automaton = SurvivorAutomaton(sys, epsilon, delta, budget)
    initials = [(p, 1 << p) for p in sorted(periodic_points(sys))]
    result = automaton.search(initials, automaton.never_hits)
    if not result.found:
        return _decision(Kind.TWO_SIDED_S_LIMIT, automaton, result)
    start = result.nodes[0]
    cycle = tuple(_periodic_cycle(sys, start))
    return Decision(
        Kind.TWO_SIDED_S_LIMIT, epsilon, delta, False,
        witness=result.nodes, lead_cycle=cycle, lead_path=(start,), explored=result.explored,
    )


def _periodic_cycle(sys, p):
    cycle = [p]
    x = sys.f(p)
    while x != p:
        cycle.append(x)
        x = sys.f(x)
    return cycle


DECIDERS = {
    Kind.FORWARD: decide_forward,
    Kind.BACKWARD: decide_backward,
    Kind.TWO_SIDED: decide_two_sided,
    Kind.H: decide_h,
    Kind.S_LIMIT: decide_s_limit,
    Kind.TWO_SIDED_S_LIMIT: decide_two_sided_s_limit,
}


def decide(sys, kind, epsilon, delta, budget=None):
    """Single entry point for every shadowing decider."""
    try:
        decider = DECIDERS[kind]
    except KeyError:
        raise ValueError(f'unknown shadowing kind {kind!r}') from None
    decision = decider(sys, epsilon, delta, budget)
    logger.debug(
        '%s at epsilon=%s delta=%s: %s (%d states)',
        kind, epsilon, delta, 'holds' if decision.holds else 'fails', decision.explored,
    )
    return decision
