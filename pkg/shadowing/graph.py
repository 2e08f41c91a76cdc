"""
The delta-pseudo-orbit graph: x -> y whenever d(f(x), y) < delta.

A delta-pseudo-orbit is exactly an infinite walk in this graph.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from systems.exceptions import DegenerateThresholdError

logger = logging.getLogger(__name__)


def require_positive(name, threshold):
    if not threshold.is_positive:
        raise DegenerateThresholdError(f'{name} must be positive, got {threshold}')


@dataclass(frozen=True)
class PseudoOrbitGraph:
    delta: object
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def size(self):
        return len(self.adjacency)

    def successors(self, x):
        return self.adjacency[x]

    def has_edge(self, x, y):
        return y in self.adjacency[x]

    @cached_property
    def digraph(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from((x, y) for x, targets in enumerate(self.adjacency) for y in targets)
        return graph

    @cached_property
    def cycle_nodes(self):
        """Nodes lying on a directed cycle (self-loops included)."""
        nodes = set(nx.nodes_with_selfloops(self.digraph))
        for component in nx.strongly_connected_components(self.digraph):
            if len(component) > 1:
                nodes |= component
        return frozenset(nodes)


def pseudo_graph(sys, delta):
    require_positive('delta', delta)
    row_of_image = [sys.sq[sys.f(x)] for x in range(sys.size)]
    adjacency = tuple(
        tuple(y for y in range(sys.size) if delta.admits(row[y]))
        for row in row_of_image
    )
    return PseudoOrbitGraph(delta=delta, adjacency=adjacency)


def left_extendable(graph):
    """Nodes through which some left-infinite walk passes: the cycle nodes and their descendants."""
    nodes = set(graph.cycle_nodes)
    for node in graph.cycle_nodes:
        nodes |= nx.descendants(graph.digraph, node)
    return frozenset(nodes)


def lead_in(graph, target):
    """
    A cycle and a path showing that `target` is left-extendable.

    Returns (cycle, path): `cycle` is a closed walk starting at path[0]
    (its last node has an edge back to its first) and `path` runs from that
    cycle node to `target`. Ties are broken by PointId order.
    """
    sources = sorted(graph.cycle_nodes)
    try:
        _length, path = nx.multi_source_dijkstra(graph.digraph, sources, target=target)
    except (nx.NetworkXNoPath, ValueError):
        raise ValueError(f'node {target} is not left-extendable') from None
    start = path[0]
    if graph.has_edge(start, start):
        return (start,), tuple(path)
    component = next(c for c in nx.strongly_connected_components(graph.digraph) if start in c)
    step = min(y for y in graph.successors(start) if y in component)
    back = nx.shortest_path(graph.digraph, step, start)
    return (start, *back[:-1]), tuple(path)
