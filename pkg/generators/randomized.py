"""
Seeded random systems for the verification corpora.
"""
import random
from fractions import Fraction

import networkx as nx
from django.db import models
from django.utils.translation import gettext_lazy as _

from systems.conf import shadowlab_setting
from systems.domain import FiniteSystem, MetricType, Point
from systems.exceptions import GeneratorError
from systems.rationals import format_rational

from .families import Family, _finish, _meta

GRID = 16


class RandomMode(models.TextChoices):
    PLANE = 'plane', _('Distinct grid points in the unit square')
    MATRIX = 'matrix', _('Random distance table closed under shortest paths')


def gen_random(seed, npoints, mode=RandomMode.PLANE):
    """Deterministic in (seed, npoints, mode)."""
    cap = shadowlab_setting('RANDOM_POINTS_CAP')
    if not 1 <= npoints <= cap:
        raise GeneratorError(f'npoints must be between 1 and {cap}, got {npoints}')
    if mode not in RandomMode.values:
        raise GeneratorError(f'unknown random mode {mode!r}')

    rng = random.Random(f'{seed}:{npoints}:{mode}')
    meta = _meta(Family.RANDOM, seed=seed, points=npoints, mode=mode)
    if mode == RandomMode.PLANE:
        cells = rng.sample(range((GRID + 1) ** 2), npoints)
        coords = [(Fraction(cell // (GRID + 1), GRID), Fraction(cell % (GRID + 1), GRID)) for cell in cells]
        images = tuple(rng.randrange(npoints) for _ in range(npoints))
        points = tuple(
            Point(f'({format_rational(x)},{format_rational(y)})', (x, y)) for x, y in coords
        )
        return _finish(FiniteSystem(points=points, images=images, metric_type=MetricType.EUCLIDEAN, meta=meta))

    table = _repaired_table(rng, npoints)
    images = tuple(rng.randrange(npoints) for _ in range(npoints))
    points = tuple(Point(f'm{i}') for i in range(npoints))
    return _finish(
        FiniteSystem(points=points, images=images, metric_type=MetricType.MATRIX, sq_table=table, meta=meta)
    )


def _repaired_table(rng, npoints):
    """
    Random edge lengths in [1/4, 2], replaced by shortest-path distances.

    The shortest-path closure of positive lengths is always a metric, so the
    table needs no redraw.
    """
    graph = nx.complete_graph(npoints)
    for u, v in graph.edges:
        graph.edges[u, v]['weight'] = Fraction(rng.randint(1, 8), 4)
    lengths = nx.floyd_warshall(graph, weight='weight')
    return tuple(
        tuple(Fraction(lengths[i][j]) ** 2 for j in range(npoints))
        for i in range(npoints)
    )
