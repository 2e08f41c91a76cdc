"""
Example systems at truncation depth, plus small reference families.

Every constructor is deterministic and returns a validated FiniteSystem
whose labels encode construction coordinates and whose meta records the
generator parameters.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from django.db import models
from django.utils.translation import gettext_lazy as _

from systems.domain import FiniteSystem, MetricType, Point, is_surjective
from systems.exceptions import GeneratorError
from systems.rationals import format_rational
from systems.validation import validate_system

logger = logging.getLogger(__name__)


class Family(models.TextChoices):
    NOT_ONTO = 'not-onto', _('Non-surjective line example')
    N_EXPANSIVE = 'n-expansive', _('Positively n-expansive plane example')
    IDENTITY_CANTOR = 'identity-cantor', _('Identity on {1/2^k} and 0')
    PERIODIC_SHIFT = 'periodic-shift', _('Periodic points of the full shift')
    CYCLE = 'cycle', _('k-cycle with unit distances')
    TWO_FIXED = 'two-fixed', _('Two fixed points')
    MERGE = 'merge', _('Three points merging onto one')
    RANDOM = 'random', _('Random system')


class Boundary(models.TextChoices):
    OPEN = 'open', _('Deepest level left without preimages')
    LOOP = 'loop', _('Deepest level closed by a fixed point')


class Sided(models.TextChoices):
    ONE = 'one', _('One-sided words')
    TWO = 'two', _('Two-sided words')


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def build(self):
        return generate(self)


def _meta(family, **params):
    meta = {'generator': str(family)}
    meta.update({key: str(value) for key, value in params.items()})
    return meta


def _finish(sys):
    result = validate_system(sys)
    if not result.ok:
        raise GeneratorError(f'{sys.meta.get("generator")} produced an invalid system: {result.messages()}')
    logger.debug('generated %s with %d points', sys.meta.get('generator'), sys.size)
    return sys


def _line_system(values, images, meta):
    points = tuple(Point(format_rational(v), (Fraction(v),)) for v in values)
    return FiniteSystem(points=points, images=tuple(images), metric_type=MetricType.EUCLIDEAN, meta=meta)


def gen_not_onto(N):
    """
    Points -1, -1/2, 0, 1, 1/2, ..., 1/2^N on the line.

    f(-1) = -1/2, f(-1/2) = 0, 0 and 1 are fixed, f(1/2^k) = 1/2^(k-1).
    """
    if N < 1:
        raise GeneratorError(f'N must be at least 1, got {N}')
    values = [Fraction(-1), Fraction(-1, 2), Fraction(0)] + [Fraction(1, 2 ** k) for k in range(N + 1)]
    images = [1, 2, 2, 3] + [3 + k - 1 for k in range(1, N + 1)]
    meta = _meta(Family.NOT_ONTO, N=N)
    meta['f(-1/2)'] = '0'
    return _finish(_line_system(values, images, meta))


def _y_levels(n, K):
    levels = [[Fraction(3)]]
    for k in range(K):
        left = min(levels[-1])
        start = left - Fraction(1, 2 ** k)
        gap = Fraction(1, 2 ** (k + 1)) / (n - 1)
        levels.append([start - i * gap for i in range(n)])
    return levels


def gen_n_expansive(n, K, M, boundary=Boundary.OPEN):
    """
    Plane system that is positively n-expansive but not (n-1)-expansive.

    Y_0 = {(3, 0)}; each next level holds n equidistant points left of the
    previous level's leftmost point. X_0 is the Y levels plus (0, 0); X_k is
    X_(k-1) without its rightmost point, shifted down by 2^-(k-1). Points of
    X_k move to the next point to the right one row up; the chain points
    (0, -sum 2^-i) climb to (0, 0); (0, 0), (3, 0) and (0, -2) are fixed.

    The leftmost point of the deepest Y level is the one X_0 point nothing
    maps to; LOOP makes it fixed. The bottom row X_M never has preimages, so
    the system is not onto under either boundary and meta records that.
    """
    if n < 2 or K < 1 or M < 0:
        raise GeneratorError(f'need n >= 2, K >= 1, M >= 0; got n={n}, K={K}, M={M}')
    if boundary not in Boundary.values:
        raise GeneratorError(f'unknown boundary {boundary!r}')

    levels = _y_levels(n, K)
    rows = [[(x, Fraction(0)) for level in levels for x in level] + [(Fraction(0), Fraction(0))]]
    if M > len(rows[0]) - 2:
        raise GeneratorError(f'M={M} would empty the lower rows; at most {len(rows[0]) - 2} for n={n}, K={K}')
    for k in range(1, M + 1):
        previous = rows[-1]
        rightmost = max(previous, key=lambda point: point[0])
        drop = Fraction(1, 2 ** (k - 1))
        rows.append([(x, y - drop) for x, y in previous if (x, y) != rightmost])

    coords = [point for row in rows for point in row] + [(Fraction(0), Fraction(-2))]
    index = {point: i for i, point in enumerate(coords)}
    images = [None] * len(coords)

    for point in ((Fraction(3), Fraction(0)), (Fraction(0), Fraction(0)), (Fraction(0), Fraction(-2))):
        images[index[point]] = index[point]
    for j in range(1, K + 1):
        target = index[(min(levels[j - 1]), Fraction(0))]
        for x in levels[j]:
            images[index[(x, Fraction(0))]] = target
    if boundary == Boundary.LOOP:
        anchor = index[(min(levels[K]), Fraction(0))]
        images[anchor] = anchor

    for k in range(1, M + 1):
        upper = rows[k - 1]
        for x, y in rows[k]:
            if x == 0:
                images[index[(x, y)]] = index[(Fraction(0), upper[0][1])]
                continue
            z = min(x2 for x2, _y in upper if x2 > x)
            images[index[(x, y)]] = index[(z, upper[0][1])]

    points = tuple(Point(f'({format_rational(x)},{format_rational(y)})', (x, y)) for x, y in coords)
    sys = FiniteSystem(
        points=points,
        images=tuple(images),
        metric_type=MetricType.EUCLIDEAN,
        meta=_meta(Family.N_EXPANSIVE, n=n, K=K, M=M, boundary=boundary),
    )
    sys.meta['surjective'] = str(is_surjective(sys)).lower()
    return _finish(sys)


def gen_identity_cantor(N):
    """1, 1/2, ..., 1/2^N and 0 under the identity."""
    if N < 0:
        raise GeneratorError(f'N must be nonnegative, got {N}')
    values = [Fraction(1, 2 ** k) for k in range(N + 1)] + [Fraction(0)]
    return _finish(_line_system(values, range(len(values)), _meta(Family.IDENTITY_CANTOR, N=N)))


def _is_primitive(word):
    p = len(word)
    return all(word != word[d:] + word[:d] for d in range(1, p) if p % d == 0)


def _word_label(word, alphabet):
    return ''.join(map(str, word)) if alphabet <= 10 else '.'.join(map(str, word))


def _shift_square(u, v, sided):
    """Squared distance between the periodic words with blocks u and v."""
    horizon = len(u) * len(v)
    for m in range(horizon + 1):
        differs = u[m % len(u)] != v[m % len(v)]
        if sided == Sided.TWO:
            differs = differs or u[-m % len(u)] != v[-m % len(v)]
        if differs:
            return Fraction(1, 4 ** m)
    return Fraction(0)


def gen_periodic_shift(alphabet, period_bound, sided=Sided.TWO):
    """
    Periodic words of least period at most `period_bound` under the shift.

    A point is a primitive block w, read as the word s_i = w[i mod |w|]. The
    metric is 2^-m for the first index m (|i| for two-sided words) where the
    words disagree.
    """
    if alphabet < 2 or period_bound < 1:
        raise GeneratorError(f'need alphabet >= 2 and period >= 1; got {alphabet}, {period_bound}')
    if sided not in Sided.values:
        raise GeneratorError(f'unknown sidedness {sided!r}')
    words = [
        word
        for p in range(1, period_bound + 1)
        for word in itertools.product(range(alphabet), repeat=p)
        if _is_primitive(word)
    ]
    index = {word: i for i, word in enumerate(words)}
    images = [index[word[1:] + word[:1]] for word in words]
    table = tuple(tuple(_shift_square(u, v, sided) for v in words) for u in words)
    sys = FiniteSystem(
        points=tuple(Point(_word_label(word, alphabet)) for word in words),
        images=tuple(images),
        metric_type=MetricType.MATRIX,
        sq_table=table,
        meta=_meta(Family.PERIODIC_SHIFT, alphabet=alphabet, period=period_bound, sided=sided),
    )
    return _finish(sys)


def _unit_table(k):
    return tuple(tuple(Fraction(0 if i == j else 1) for j in range(k)) for i in range(k))


def gen_cycle(k):
    if k < 1:
        raise GeneratorError(f'cycle length must be positive, got {k}')
    sys = FiniteSystem(
        points=tuple(Point(f'c{i}') for i in range(k)),
        images=tuple((i + 1) % k for i in range(k)),
        sq_table=_unit_table(k),
        meta=_meta(Family.CYCLE, k=k),
    )
    return _finish(sys)


def gen_two_fixed(d=Fraction(1)):
    d = Fraction(d)
    if d <= 0:
        raise GeneratorError(f'distance must be positive, got {d}')
    sys = FiniteSystem(
        points=(Point('a'), Point('b')),
        images=(0, 1),
        sq_table=((Fraction(0), d * d), (d * d, Fraction(0))),
        meta=_meta(Family.TWO_FIXED, d=format_rational(d)),
    )
    return _finish(sys)


def gen_merge():
    """p, q at distance 1, both at distance 2 from r; everything maps to r."""
    table = ((0, 1, 4), (1, 0, 4), (4, 4, 0))
    sys = FiniteSystem(
        points=(Point('p'), Point('q'), Point('r')),
        images=(2, 2, 2),
        sq_table=tuple(tuple(Fraction(v) for v in row) for row in table),
        meta=_meta(Family.MERGE),
    )
    return _finish(sys)


def generate(spec):
    """Build the system a GeneratorSpec describes."""
    from .randomized import gen_random

    params = dict(spec.params)
    family = spec.family
    try:
        if family == Family.NOT_ONTO:
            return gen_not_onto(params.get('N', 3))
        if family == Family.N_EXPANSIVE:
            return gen_n_expansive(
                params.get('n', 2), params.get('K', 3), params.get('M', 1), params.get('boundary', Boundary.OPEN),
            )
        if family == Family.IDENTITY_CANTOR:
            return gen_identity_cantor(params.get('N', 4))
        if family == Family.PERIODIC_SHIFT:
            return gen_periodic_shift(params.get('alphabet', 2), params.get('period', 2), params.get('sided', Sided.TWO))
        if family == Family.CYCLE:
            return gen_cycle(params.get('k', 3))
        if family == Family.TWO_FIXED:
            return gen_two_fixed(params.get('d', Fraction(1)))
        if family == Family.MERGE:
            return gen_merge()
        if family == Family.RANDOM:
            return gen_random(spec.seed or 0, params.get('points', 6), params.get('mode', 'plane'))
    except TypeError as exc:
        raise GeneratorError(f'bad parameters for {family}: {exc}') from exc
    raise GeneratorError(f'unknown family {family!r}')
