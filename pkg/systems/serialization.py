"""
System document interchange (JSON via orjson).

The document is bit-exact: rationals are canonical "p/q" strings, point
order is preserved, and loading re-validates the system.
"""
import hashlib
import logging
from pathlib import Path

import orjson

from .domain import FiniteSystem, MetricType, Point
from .exceptions import DocumentError
from .rationals import format_rational, parse_rational
from .validation import validate_system

logger = logging.getLogger(__name__)

TOP_LEVEL_KEYS = ('points', 'metric', 'map', 'meta')
POINT_KEYS = ('label', 'coords')
DUMP_OPTIONS = orjson.OPT_INDENT_2


def system_to_document(sys):
    points = []
    for point in sys.points:
        record = {'label': point.label}
        if point.coords is not None:
            record['coords'] = [format_rational(c) for c in point.coords]
        points.append(record)
    if sys.metric_type == MetricType.EUCLIDEAN:
        metric = {'type': MetricType.EUCLIDEAN.value}
    else:
        metric = {
            'type': MetricType.MATRIX.value,
            'sq': [[format_rational(value) for value in row] for row in sys.sq_table],
        }
    return {
        'points': points,
        'metric': metric,
        'map': list(sys.images),
        'meta': {str(key): str(value) for key, value in sys.meta.items()},
    }


def dumps_system(sys):
    return orjson.dumps(system_to_document(sys), option=DUMP_OPTIONS) + b'\n'


def fingerprint(sys):
    """Content hash of the canonical document."""
    return hashlib.sha256(dumps_system(sys)).hexdigest()


def save_system(sys, destination):
    """Write the canonical document to a path or a binary file object."""
    payload = dumps_system(sys)
    if hasattr(destination, 'write'):
        destination.write(payload)
    else:
        Path(destination).write_bytes(payload)
    logger.debug('saved system with %d points', sys.size)


def load_system(source):
    """Read a document from a path, bytes, or binary file object and validate it."""
    if isinstance(source, bytes | bytearray):
        raw = bytes(source)
    elif hasattr(source, 'read'):
        raw = source.read()
    else:
        raw = Path(source).read_bytes()
    return loads_system(raw)


def loads_system(raw):
    try:
        document = orjson.loads(raw)
    except orjson.JSONDecodeError as exc:
        raise DocumentError(f'invalid JSON ({exc.msg})', code='parse_error', line=exc.lineno) from exc
    sys = document_to_system(document)
    result = validate_system(sys)
    if not result.ok:
        raise DocumentError(
            'system fails validation: ' + '; '.join(result.messages()),
            code='invalid_system',
            params={'violations': result.messages()},
        )
    return sys


def document_to_system(document):
    if not isinstance(document, dict):
        raise DocumentError('top level must be an object')
    unknown = sorted(set(document) - set(TOP_LEVEL_KEYS))
    if unknown:
        raise DocumentError(f'unknown top-level keys {unknown}', code='unknown_key')
    for key in ('points', 'metric', 'map'):
        if key not in document:
            raise DocumentError('missing required key', code='missing_key', field=key)

    points = _parse_points(document['points'])
    metric_type, sq_table = _parse_metric(document['metric'])
    images = _parse_map(document['map'])
    meta = _parse_meta(document.get('meta', {}))
    return FiniteSystem(
        points=points,
        images=images,
        metric_type=metric_type,
        sq_table=sq_table,
        meta=meta,
    )


def _parse_points(raw_points):
    if not isinstance(raw_points, list):
        raise DocumentError('expected an array', field='points')
    points = []
    for index, raw in enumerate(raw_points):
        path = f'points[{index}]'
        if not isinstance(raw, dict):
            raise DocumentError('expected an object', field=path)
        unknown = sorted(set(raw) - set(POINT_KEYS))
        if unknown:
            raise DocumentError(f'unknown keys {unknown}', code='unknown_key', field=path)
        label = raw.get('label')
        if not isinstance(label, str):
            raise DocumentError('label must be a string', field=f'{path}.label')
        coords = None
        if 'coords' in raw:
            if not isinstance(raw['coords'], list):
                raise DocumentError('expected an array', field=f'{path}.coords')
            coords = tuple(
                parse_rational(value, field=f'{path}.coords[{axis}]')
                for axis, value in enumerate(raw['coords'])
            )
        points.append(Point(label=label, coords=coords))
    return tuple(points)


def _parse_metric(raw_metric):
    if not isinstance(raw_metric, dict):
        raise DocumentError('expected an object', field='metric')
    metric_type = raw_metric.get('type')
    if metric_type == MetricType.EUCLIDEAN:
        if set(raw_metric) != {'type'}:
            raise DocumentError('euclidean metric takes no other keys', code='unknown_key', field='metric')
        return MetricType.EUCLIDEAN, None
    if metric_type == MetricType.MATRIX:
        if set(raw_metric) != {'type', 'sq'}:
            raise DocumentError('matrix metric needs exactly "type" and "sq"', field='metric')
        rows = raw_metric['sq']
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise DocumentError('expected an array of arrays', field='metric.sq')
        table = tuple(
            tuple(parse_rational(value, field=f'metric.sq[{i}][{j}]') for j, value in enumerate(row))
            for i, row in enumerate(rows)
        )
        return MetricType.MATRIX, table
    raise DocumentError(f'unknown metric type {metric_type!r}', field='metric.type')


def _parse_map(raw_map):
    if not isinstance(raw_map, list):
        raise DocumentError('expected an array', field='map')
    for index, value in enumerate(raw_map):
        if not isinstance(value, int) or isinstance(value, bool):
            raise DocumentError('map entries must be integers', field=f'map[{index}]')
    return tuple(raw_map)


def _parse_meta(raw_meta):
    if not isinstance(raw_meta, dict):
        raise DocumentError('expected an object', field='meta')
    for key, value in raw_meta.items():
        if not isinstance(value, str):
            raise DocumentError('meta values must be strings', field=f'meta.{key}')
    return dict(raw_meta)
