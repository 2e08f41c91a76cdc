"""
Validation of finite systems.

Violations are data: validate_system never raises for a bad system, it
returns every problem it found with the offending indices.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .domain import MetricType


@dataclass(frozen=True)
class Violation:
    code: str
    indices: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def messages(self):
        return [violation.message for violation in self.violations]


def validate_system(sys):
    """Check every FiniteSystem invariant; ok iff the violation list is empty."""
    violations = []
    n = sys.size
    if n == 0:
        return ValidationResult((Violation('empty', (), 'system has no points'),))

    seen = {}
    for index, point in enumerate(sys.points):
        if point.label in seen:
            violations.append(Violation(
                'duplicate_label', (seen[point.label], index),
                f'duplicate label {point.label!r} at ({seen[point.label]},{index})',
            ))
        seen.setdefault(point.label, index)

    if len(sys.images) != n:
        violations.append(Violation(
            'map_length', (), f'map has {len(sys.images)} entries for {n} points',
        ))
    for index, image in enumerate(sys.images):
        if not isinstance(image, int) or not 0 <= image < n:
            violations.append(Violation('map_range', (index,), f'map entry {index} out of range: {image}'))

    metric_ok = _validate_metric_shape(sys, violations)
    if metric_ok:
        _validate_metric_axioms(sys.sq, violations)
    return ValidationResult(tuple(violations))


def _validate_metric_shape(sys, violations):
    n = sys.size
    if sys.metric_type == MetricType.EUCLIDEAN:
        dims = {len(point.coords) for point in sys.points if point.coords is not None}
        missing = [index for index, point in enumerate(sys.points) if point.coords is None]
        for index in missing:
            violations.append(Violation('coords_missing', (index,), f'point {index} has no coordinates'))
        if len(dims) > 1:
            violations.append(Violation('coords_dimension', (), f'mixed coordinate dimensions {sorted(dims)}'))
        return not missing and len(dims) == 1
    if sys.metric_type != MetricType.MATRIX:
        violations.append(Violation('metric_type', (), f'unknown metric type {sys.metric_type!r}'))
        return False
    table = sys.sq_table
    if table is None or len(table) != n or any(len(row) != n for row in table):
        violations.append(Violation('matrix_shape', (), f'squared-distance table is not {n}x{n}'))
        return False
    return True


def _validate_metric_axioms(sq, violations):
    n = len(sq)
    for i in range(n):
        if sq[i][i] != 0:
            violations.append(Violation('nonzero_diagonal', (i,), f'nonzero self-distance at ({i},{i})'))
        for j in range(i + 1, n):
            if sq[i][j] != sq[j][i]:
                violations.append(Violation('asymmetry', (i, j), f'asymmetry at ({i},{j})'))
            if sq[i][j] <= 0 or sq[j][i] <= 0:
                violations.append(Violation(
                    'nonpositive_distance', (i, j), f'nonpositive distance between distinct points ({i},{j})',
                ))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not triangle_holds(sq[i][j], sq[j][k], sq[i][k]):
                    violations.append(Violation(
                        'triangle', (i, j, k), f'triangle inequality fails at ({i},{j},{k})',
                    ))


def triangle_holds(ab, bc, ac):
    """sqrt(ac) <= sqrt(ab) + sqrt(bc), decided exactly on the squares."""
    excess = Fraction(ac) - ab - bc
    if excess <= 0:
        return True
    return excess * excess <= 4 * ab * bc
