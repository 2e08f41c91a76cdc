"""
Tuple automata for counting shadowers.

A TupleState pairs a pseudo-orbit node with the sorted positions of m
trackers. Origins are distinct when the tuple is created; positions may
merge afterwards. A transition follows one delta-edge and maps every
position through f, and is allowed only when every image lands in the new
epsilon-ball.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass

import networkx as nx

from shadowing.graph import pseudo_graph, require_positive
from systems.conf import shadowlab_setting
from systems.domain import ball
from systems.exceptions import BudgetExceededError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class TupleState:
    node: int
    positions: tuple[int, ...]


@dataclass(frozen=True)
class Lasso:
    """A pseudo-orbit stem + cycle^infinity and the distinct origins tracking it."""
    stem: tuple[int, ...]
    cycle: tuple[int, ...]
    origins: tuple[int, ...]

    def to_dict(self, sys):
        labels = sys.labels
        return {
            'stem': [labels[x] for x in self.stem],
            'cycle': [labels[x] for x in self.cycle],
            'origins': [labels[x] for x in self.origins],
        }


class TupleAutomaton:
    def __init__(self, sys, epsilon, delta, budget=None, distinct=False):
        require_positive('epsilon', epsilon)
        self.sys = sys
        self.epsilon = epsilon
        self.delta = delta
        self.graph = pseudo_graph(sys, delta)
        self.balls = tuple(ball(sys, x, epsilon) for x in range(sys.size))
        self.budget = budget or shadowlab_setting('TUPLE_BUDGET')
        self.distinct = distinct

    def initial_states(self, m, nodes=None):
        nodes = range(self.sys.size) if nodes is None else sorted(nodes)
        for x in nodes:
            for positions in itertools.combinations(sorted(self.balls[x]), m):
                yield TupleState(x, positions)

    def successors(self, state):
        images = tuple(sorted(self.sys.f(p) for p in state.positions))
        if self.distinct and len(set(images)) < len(images):
            return
        for target in self.graph.successors(state.node):
            if all(p in self.balls[target] for p in images):
                yield TupleState(target, images)

    def explore(self, initials, stop=None):
        """
        Breadth-first exploration from `initials`.

        Returns (graph, parents, order, hit): the explored transition graph,
        BFS parent pointers, discovery order, and the first state satisfying
        `stop` if one is given and reached.
        """
        graph = nx.DiGraph()
        parents = {}
        order = []
        queue = deque()

        def admit(state, parent):
            if state in parents:
                return False
            parents[state] = parent
            order.append(state)
            graph.add_node(state)
            if len(order) > self.budget:
                logger.warning('tuple automaton exceeded its budget of %d states', self.budget)
                raise BudgetExceededError('tuple automaton', self.budget, len(order))
            return True

        for state in initials:
            if admit(state, None):
                if stop is not None and stop(state):
                    return graph, parents, order, state
                queue.append(state)
        while queue:
            state = queue.popleft()
            for successor in self.successors(state):
                graph.add_edge(state, successor)
                if admit(successor, state):
                    if stop is not None and stop(successor):
                        return graph, parents, order, successor
                    queue.append(successor)
        logger.debug('tuple automaton explored %d states', len(order))
        return graph, parents, order, None


def path_to(parents, state):
    path = []
    while state is not None:
        path.append(state)
        state = parents[state]
    return list(reversed(path))


def cycle_states(graph):
    states = set(nx.nodes_with_selfloops(graph))
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            states |= component
    return states


def cycle_through(graph, state):
    """A closed walk of states starting at `state`, deterministic."""
    if graph.has_edge(state, state):
        return [state]
    component = next(c for c in nx.strongly_connected_components(graph) if state in c)
    step = min(s for s in graph.successors(state) if s in component)
    back = nx.shortest_path(graph, step, state)
    return [state, *back[:-1]]


def cycle_entry(graph, order):
    """The earliest-discovered state lying on a cycle, or None when the graph is acyclic."""
    on_cycles = cycle_states(graph)
    return next((state for state in order if state in on_cycles), None)


def find_lasso(graph, parents, order):
    """A BFS stem to the earliest cycle state plus a cycle through it; None when acyclic."""
    entry = cycle_entry(graph, order)
    if entry is None:
        return None
    stem_states = path_to(parents, entry)
    loop = cycle_through(graph, entry)
    return Lasso(
        stem=tuple(s.node for s in stem_states[:-1]),
        cycle=tuple(s.node for s in loop),
        origins=stem_states[0].positions,
    )
