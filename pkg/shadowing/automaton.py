"""
The survivor subset automaton.

A state pairs the current pseudo-orbit node x with the set S of current
positions of every tracker that stayed within epsilon so far. Following a
delta-edge x -> x' maps S to f(S) & ball(x'). Survivor sets are int
bitmasks over PointIds.
"""
import logging
from collections import defaultdict, deque
from dataclasses import dataclass

from systems.conf import shadowlab_setting
from systems.domain import ball
from systems.exceptions import BudgetExceededError

from .graph import pseudo_graph, require_positive

logger = logging.getLogger(__name__)


def to_mask(points):
    mask = 0
    for point in points:
        mask |= 1 << point
    return mask


def members(mask):
    points = []
    while mask:
        low = mask & -mask
        points.append(low.bit_length() - 1)
        mask ^= low
    return points


@dataclass(frozen=True)
class SurvivorState:
    node: int
    survivors: frozenset

    @classmethod
    def from_pair(cls, pair):
        node, mask = pair
        return cls(node=node, survivors=frozenset(members(mask)))


@dataclass(frozen=True)
class SearchResult:
    found: bool
    path: tuple = ()
    explored: int = 0

    @property
    def nodes(self):
        return tuple(node for node, _mask in self.path)


class SurvivorAutomaton:
    def __init__(self, sys, epsilon, delta, budget=None):
        require_positive('epsilon', epsilon)
        self.sys = sys
        self.epsilon = epsilon
        self.delta = delta
        self.graph = pseudo_graph(sys, delta)
        self.ball_masks = tuple(to_mask(ball(sys, x, epsilon)) for x in range(sys.size))
        self.budget = budget or shadowlab_setting('STATE_BUDGET')
        self._image_bits = tuple(1 << sys.f(x) for x in range(sys.size))
        self._images = {}

    def initial(self, x):
        return (x, self.ball_masks[x])

    def image(self, mask):
        cached = self._images.get(mask)
        if cached is None:
            cached = 0
            for point in members(mask):
                cached |= self._image_bits[point]
            self._images[mask] = cached
        return cached

    def step(self, state, target):
        _node, mask = state
        return (target, self.image(mask) & self.ball_masks[target])

    def true_step(self, state):
        return self.step(state, self.sys.f(state[0]))

    def successors(self, state):
        for target in self.graph.successors(state[0]):
            yield self.step(state, target)

    def search(self, initials, is_bad, prune=True):
        """
        Breadth-first search for a reachable state satisfying `is_bad`.

        With prune=True a state (x, S) is skipped when some admitted (x, S')
        has S' a subset of S; `is_bad` must then be antitone in S.
        """
        parents = {}
        minimal = defaultdict(list)
        queue = deque()
        explored = 0

        def admit(state, parent):
            nonlocal explored
            node, mask = state
            if prune:
                kept = minimal[node]
                if any(seen & ~mask == 0 for seen in kept):
                    return False
                minimal[node] = [seen for seen in kept if mask & ~seen] + [mask]
            elif state in parents:
                return False
            explored += 1
            if explored > self.budget:
                logger.warning('survivor automaton exceeded its budget of %d states', self.budget)
                raise BudgetExceededError('survivor automaton', self.budget, explored)
            parents[state] = parent
            return True

        def found(state):
            path = []
            while state is not None:
                path.append(state)
                state = parents[state]
            logger.debug('bad state reached after %d states', explored)
            return SearchResult(found=True, path=tuple(reversed(path)), explored=explored)

        for state in initials:
            if admit(state, None):
                if is_bad(state):
                    return found(state)
                queue.append(state)
        while queue:
            state = queue.popleft()
            for successor in self.successors(state):
                if admit(successor, state):
                    if is_bad(successor):
                        return found(successor)
                    queue.append(successor)
        logger.debug('no bad state among %d explored', explored)
        return SearchResult(found=False, explored=explored)

    def never_hits(self, state):
        """
        Following true edges from `state`, the current node never enters the
        survivor set before the (node, survivors) pair repeats.
        """
        seen = set()
        while state not in seen:
            node, mask = state
            if mask >> node & 1:
                return False
            seen.add(state)
            state = self.true_step(state)
        return True
