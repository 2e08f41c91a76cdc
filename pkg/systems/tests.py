import io
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from .domain import (
    FiniteSystem,
    MetricType,
    Point,
    ball,
    is_injective,
    is_surjective,
    orbit_profile,
    squared_distance,
)
from .exceptions import DocumentError
from .rationals import (
    UNBOUNDED,
    ZERO,
    Threshold,
    format_rational,
    format_threshold,
    parse_rational,
    parse_threshold,
)
from .serialization import dumps_system, fingerprint, load_system, save_system
from .validation import triangle_holds, validate_system


def matrix_system(sq, images, labels=None):
    labels = labels or [f'x{i}' for i in range(len(images))]
    return FiniteSystem(
        points=tuple(Point(label) for label in labels),
        images=tuple(images),
        metric_type=MetricType.MATRIX,
        sq_table=tuple(tuple(Fraction(v) for v in row) for row in sq),
    )


def c3():
    return matrix_system([[0, 1, 1], [1, 0, 1], [1, 1, 0]], [1, 2, 0])


def merge():
    return matrix_system([[0, 1, 4], [1, 0, 4], [4, 4, 0]], [2, 2, 2], labels=['p', 'q', 'r'])


class RationalTests(SimpleTestCase):
    def test_canonical_forms_parse(self):
        self.assertEqual(parse_rational('3/4'), Fraction(3, 4))
        self.assertEqual(parse_rational('-7'), Fraction(-7))
        self.assertEqual(parse_rational('0'), Fraction(0))

    def test_unit_denominator_accepted(self):
        self.assertEqual(parse_rational('3/1'), Fraction(3))
        self.assertEqual(parse_rational('-5/1'), Fraction(-5))
        self.assertEqual(parse_rational('0/1'), Fraction(0))

    def test_non_canonical_forms_rejected(self):
        for text in ('2/4', '6/2', '0/3', '-0/1', '-0', '01', '1/-2', '1.5', ''):
            with self.subTest(text=text), self.assertRaises(DocumentError):
                parse_rational(text)

    def test_non_string_rejected(self):
        with self.assertRaises(DocumentError):
            parse_rational(3)

    def test_format(self):
        self.assertEqual(format_rational(Fraction(6, 8)), '3/4')
        self.assertEqual(format_rational(Fraction(5)), '5')

    def test_threshold_ordering(self):
        self.assertLess(ZERO, Threshold.of(Fraction(1, 8)))
        self.assertLess(Threshold.of(100), UNBOUNDED)
        self.assertFalse(UNBOUNDED < UNBOUNDED)

    def test_threshold_admits_is_strict(self):
        one = Threshold.of(1)
        self.assertFalse(one.admits(Fraction(1)))
        self.assertTrue(one.admits(Fraction(99, 100)))
        self.assertTrue(UNBOUNDED.admits(Fraction(10**9)))
        self.assertFalse(ZERO.admits(Fraction(0)))

    def test_threshold_text(self):
        self.assertEqual(format_threshold(Threshold.of(Fraction(1, 8))), '1/8')
        self.assertEqual(format_threshold(Threshold.from_square(2)), 'sqrt(2)')
        self.assertEqual(format_threshold(UNBOUNDED), 'unbounded')
        self.assertEqual(parse_threshold('sqrt(2)'), Threshold.from_square(2))
        self.assertEqual(parse_threshold('1/4'), Threshold.of(Fraction(1, 4)))
        self.assertIs(parse_threshold('unbounded'), UNBOUNDED)

    def test_negative_threshold_rejected(self):
        with self.assertRaises(DocumentError):
            parse_threshold('-1/2')

    def test_scaled(self):
        self.assertEqual(Threshold.of(1).scaled(Fraction(1, 2)), Threshold.of(Fraction(1, 2)))
        self.assertIs(UNBOUNDED.scaled(2), UNBOUNDED)


class ValidationTests(SimpleTestCase):
    def test_cycle_is_valid(self):
        self.assertTrue(validate_system(c3()).ok)

    def test_merge_is_valid(self):
        self.assertTrue(validate_system(merge()).ok)

    def test_asymmetry_reported(self):
        sys = matrix_system([[0, 1], [2, 0]], [0, 1])
        result = validate_system(sys)
        self.assertFalse(result.ok)
        self.assertIn('asymmetry at (0,1)', result.messages())

    def test_triangle_violation_reported(self):
        sys = matrix_system([[0, 1, 9], [1, 0, 1], [9, 1, 0]], [0, 1, 2])
        codes = {v.code for v in validate_system(sys).violations}
        self.assertIn('triangle', codes)

    def test_map_out_of_range(self):
        sys = matrix_system([[0, 1], [1, 0]], [0, 2])
        self.assertEqual([v.code for v in validate_system(sys).violations], ['map_range'])

    def test_duplicate_labels(self):
        sys = matrix_system([[0, 1], [1, 0]], [0, 1], labels=['a', 'a'])
        self.assertEqual(validate_system(sys).violations[0].indices, (0, 1))

    def test_empty_system(self):
        sys = FiniteSystem(points=(), images=(), sq_table=())
        self.assertFalse(validate_system(sys).ok)

    def test_euclidean_mixed_dimensions(self):
        sys = FiniteSystem(
            points=(Point('a', (Fraction(0),)), Point('b', (Fraction(0), Fraction(1)))),
            images=(0, 1),
            metric_type=MetricType.EUCLIDEAN,
        )
        self.assertFalse(validate_system(sys).ok)

    def test_triangle_on_squares(self):
        # 0, 1, 2 on a line: sq 1, 1, 4
        self.assertTrue(triangle_holds(Fraction(1), Fraction(1), Fraction(4)))
        self.assertFalse(triangle_holds(Fraction(1), Fraction(1), Fraction(5)))


class DomainTests(SimpleTestCase):
    def test_squared_distance(self):
        sys = c3()
        self.assertEqual(squared_distance(sys, 0, 1), 1)
        self.assertEqual(squared_distance(sys, 2, 2), 0)
        with self.assertRaises(IndexError):
            squared_distance(sys, 0, 3)

    def test_euclidean_distance(self):
        sys = FiniteSystem(
            points=(Point('o', (Fraction(0), Fraction(0))), Point('y', (Fraction(3), Fraction(0)))),
            images=(0, 1),
            metric_type=MetricType.EUCLIDEAN,
        )
        self.assertEqual(squared_distance(sys, 0, 1), 9)

    def test_ball(self):
        self.assertEqual(ball(c3(), 0, Threshold.of(1)), {0})
        self.assertEqual(ball(c3(), 0, Threshold.of(2)), {0, 1, 2})
        self.assertEqual(ball(merge(), 0, Threshold.of(Fraction(3, 2))), {0, 1})
        self.assertEqual(ball(c3(), 0, ZERO), set())

    def test_surjective_injective(self):
        self.assertTrue(is_surjective(c3()))
        self.assertTrue(is_injective(c3()))
        self.assertFalse(is_surjective(merge()))
        self.assertFalse(is_injective(merge()))

    def test_orbit_profile(self):
        self.assertEqual(orbit_profile(c3(), 0).period, 3)
        profile = orbit_profile(merge(), 0)
        self.assertEqual((profile.preperiod, profile.period, profile.orbit), (1, 1, (0, 2)))
        self.assertEqual(profile.cycle, (2,))

    def test_index_of(self):
        self.assertEqual(merge().index_of('q'), 1)
        with self.assertRaises(KeyError):
            merge().index_of('z')


class SerializationTests(SimpleTestCase):
    def test_round_trip(self):
        for sys in (c3(), merge()):
            buffer = io.BytesIO()
            save_system(sys, buffer)
            self.assertEqual(load_system(buffer.getvalue()), sys)

    def test_fingerprint_is_stable(self):
        self.assertEqual(fingerprint(c3()), fingerprint(c3()))
        self.assertNotEqual(fingerprint(c3()), fingerprint(merge()))

    def test_unit_denominators_load(self):
        doc = b'{"points":[{"label":"a"},{"label":"b"}],"metric":{"type":"matrix","sq":[["0","3/1"],["3/1","0/1"]]},"map":[0,1]}'
        sys = load_system(doc)
        self.assertEqual(sys.sq[0][1], Fraction(3))
        self.assertEqual(sys.sq[1][1], Fraction(0))
        self.assertIn(b'"3"', dumps_system(sys))

    def test_non_canonical_rational_rejected(self):
        doc = b'{"points":[{"label":"a"},{"label":"b"}],"metric":{"type":"matrix","sq":[["0","2/4"],["2/4","0"]]},"map":[0,1]}'
        with self.assertRaises(DocumentError) as ctx:
            load_system(doc)
        self.assertEqual(ctx.exception.code, 'non_canonical')
        self.assertEqual(ctx.exception.field, 'metric.sq[0][1]')

    def test_map_out_of_range_rejected(self):
        doc = b'{"points":[{"label":"a"}],"metric":{"type":"matrix","sq":[["0"]]},"map":[1]}'
        with self.assertRaises(DocumentError) as ctx:
            load_system(doc)
        self.assertEqual(ctx.exception.code, 'invalid_system')

    def test_unknown_key_rejected(self):
        doc = b'{"points":[],"metric":{"type":"euclidean"},"map":[],"extra":1}'
        with self.assertRaises(DocumentError) as ctx:
            load_system(doc)
        self.assertEqual(ctx.exception.code, 'unknown_key')

    def test_malformed_json_carries_line(self):
        with self.assertRaises(DocumentError) as ctx:
            load_system(b'{\n"points": [\n,]}')
        self.assertEqual(ctx.exception.code, 'parse_error')
        self.assertIsNotNone(ctx.exception.line)

    def test_dump_is_deterministic(self):
        self.assertEqual(dumps_system(merge()), dumps_system(merge()))


coordinate = st.fractions(min_value=-4, max_value=4, max_denominator=16)


@st.composite
def plane_systems(draw):
    coords = draw(st.lists(st.tuples(coordinate, coordinate), min_size=1, max_size=6, unique=True))
    images = draw(st.lists(st.integers(0, len(coords) - 1), min_size=len(coords), max_size=len(coords)))
    return FiniteSystem(
        points=tuple(Point(f'p{i}', tuple(c)) for i, c in enumerate(coords)),
        images=tuple(images),
        metric_type=MetricType.EUCLIDEAN,
        meta={'source': 'hypothesis'},
    )


class SystemPropertyTests(SimpleTestCase):
    @settings(max_examples=50, deadline=None)
    @given(plane_systems())
    def test_plane_systems_validate(self, sys):
        self.assertTrue(validate_system(sys).ok)

    @settings(max_examples=50, deadline=None)
    @given(plane_systems(), st.fractions(min_value=0, max_value=3), st.fractions(min_value=0, max_value=3))
    def test_ball_monotone_in_radius(self, sys, r1, r2):
        small, large = sorted((r1, r2))
        for center in range(sys.size):
            self.assertLessEqual(ball(sys, center, Threshold.of(small)), ball(sys, center, Threshold.of(large)))

    @settings(max_examples=50, deadline=None)
    @given(plane_systems())
    def test_orbit_profile_laws(self, sys):
        for x in range(sys.size):
            profile = orbit_profile(sys, x)
            for k in range(profile.preperiod, profile.preperiod + 2 * sys.size):
                self.assertEqual(sys.iterate(x, k + profile.period), sys.iterate(x, k))
            for smaller in range(1, profile.period):
                self.assertNotEqual(
                    sys.iterate(x, profile.preperiod + smaller), sys.iterate(x, profile.preperiod),
                )

    @settings(max_examples=50, deadline=None)
    @given(plane_systems())
    def test_serialization_identity(self, sys):
        self.assertEqual(load_system(dumps_system(sys)), sys)
