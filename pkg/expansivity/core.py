"""
The surjective core K_f: the intersection of all forward images of X.
"""
import logging
from dataclasses import dataclass

import networkx as nx

from systems.domain import FiniteSystem, MetricType, Point
from systems.exceptions import ConsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoreReport:
    core: frozenset
    stabilization_index: int

    def to_dict(self, sys):
        return {
            'core': [sys.labels[x] for x in sorted(self.core)],
            'stabilization_index': self.stabilization_index,
        }


def functional_graph(sys):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(sys.size))
    graph.add_edges_from((x, sys.f(x)) for x in range(sys.size))
    return graph


def periodic_points(sys):
    """Points on a cycle of the functional graph."""
    graph = functional_graph(sys)
    return frozenset(node for cycle in nx.simple_cycles(graph) for node in cycle)


def surjective_core(sys):
    image = frozenset(range(sys.size))
    index = 0
    while True:
        following = frozenset(sys.f(x) for x in image)
        if following == image:
            break
        image = following
        index += 1
    if image != periodic_points(sys):
        raise ConsistencyError('iterated images and cycle points disagree on the surjective core')
    return CoreReport(core=image, stabilization_index=index)


def restrict_to_core(sys):
    """The induced system on K_f, points kept in their original order."""
    core = sorted(surjective_core(sys).core)
    renumber = {old: new for new, old in enumerate(core)}
    points = tuple(Point(sys.points[x].label, sys.points[x].coords) for x in core)
    table = None
    if sys.metric_type == MetricType.MATRIX:
        table = tuple(tuple(sys.sq_table[x][y] for y in core) for x in core)
    meta = dict(sys.meta)
    meta['restricted'] = 'core'
    logger.debug('restricted %d points to a core of %d', sys.size, len(core))
    return FiniteSystem(
        points=points,
        images=tuple(renumber[sys.f(x)] for x in core),
        metric_type=sys.metric_type,
        sq_table=table,
        meta=meta,
    )
