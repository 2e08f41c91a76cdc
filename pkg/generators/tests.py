import itertools
from fractions import Fraction

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from systems.domain import is_injective, is_surjective, squared_distance
from systems.exceptions import GeneratorError
from systems.serialization import dumps_system, loads_system
from systems.validation import triangle_holds, validate_system

from .families import (
    Boundary,
    Family,
    GeneratorSpec,
    Sided,
    gen_cycle,
    gen_identity_cantor,
    gen_merge,
    gen_n_expansive,
    gen_not_onto,
    gen_periodic_shift,
    gen_two_fixed,
    generate,
)
from .randomized import RandomMode, gen_random


def image_label(sys, label):
    return sys.labels[sys.f(sys.index_of(label))]


class NotOntoTests(SimpleTestCase):
    def test_points_and_images(self):
        sys = gen_not_onto(3)
        self.assertEqual(sys.labels, ('-1', '-1/2', '0', '1', '1/2', '1/4', '1/8'))
        self.assertEqual(image_label(sys, '-1'), '-1/2')
        self.assertEqual(image_label(sys, '-1/2'), '0')
        self.assertEqual(image_label(sys, '0'), '0')
        self.assertEqual(image_label(sys, '1'), '1')
        self.assertEqual(image_label(sys, '1/8'), '1/4')

    def test_not_surjective(self):
        sys = gen_not_onto(1)
        self.assertEqual(sys.size, 5)
        self.assertFalse(is_surjective(sys))
        self.assertEqual(sys.meta['N'], '1')

    def test_rejects_small_depth(self):
        with self.assertRaises(GeneratorError):
            gen_not_onto(0)


class NExpansiveTests(SimpleTestCase):
    def test_point_count(self):
        self.assertEqual(gen_n_expansive(2, 3, 1).size, 16)
        self.assertEqual(gen_n_expansive(2, 3, 0).size, 9)

    def test_fixed_points(self):
        sys = gen_n_expansive(2, 3, 1)
        fixed = {sys.labels[x] for x in range(sys.size) if sys.f(x) == x}
        self.assertEqual(fixed, {'(3,0)', '(0,0)', '(0,-2)'})

    def test_loop_boundary_fixes_deepest_anchor(self):
        sys = gen_n_expansive(2, 3, 1, Boundary.LOOP)
        self.assertEqual(image_label(sys, '(3/8,0)'), '(3/8,0)')
        self.assertEqual(sys.meta['boundary'], 'loop')

    def test_only_the_bottom_row_lacks_preimages(self):
        bottom = {'(2,-1)', '(3/2,-1)', '(1,-1)', '(3/4,-1)', '(1/2,-1)', '(3/8,-1)', '(0,-1)'}
        for boundary, expected in ((Boundary.OPEN, bottom | {'(3/8,0)'}), (Boundary.LOOP, bottom)):
            sys = gen_n_expansive(2, 3, 1, boundary)
            with self.subTest(boundary=boundary):
                missing = {sys.labels[x] for x in range(sys.size) if not sys.preimages[x]}
                self.assertEqual(missing, expected)
                self.assertEqual(sys.meta['surjective'], 'false')

    def test_levels_climb(self):
        sys = gen_n_expansive(2, 3, 1)
        self.assertEqual(image_label(sys, '(1/2,0)'), '(3/4,0)')
        self.assertEqual(image_label(sys, '(3/8,0)'), '(3/4,0)')
        self.assertEqual(image_label(sys, '(3/8,-1)'), '(1/2,0)')
        self.assertEqual(image_label(sys, '(0,-1)'), '(0,0)')

    def test_deepest_level_spacing(self):
        sys = gen_n_expansive(2, 3, 1)
        square = squared_distance(sys, sys.index_of('(1/2,0)'), sys.index_of('(3/8,0)'))
        self.assertEqual(square, Fraction(1, 64))

    def test_rejects_bad_parameters(self):
        for args in ((1, 3, 1), (2, 0, 1), (2, 3, -1), (2, 1, 10)):
            with self.assertRaises(GeneratorError):
                gen_n_expansive(*args)
        with self.assertRaises(GeneratorError):
            gen_n_expansive(2, 3, 1, 'closed')


class SmallFamilyTests(SimpleTestCase):
    def test_identity_cantor(self):
        self.assertEqual(gen_identity_cantor(0).labels, ('1', '0'))
        sys = gen_identity_cantor(4)
        self.assertEqual(sys.size, 6)
        self.assertTrue(all(sys.f(x) == x for x in range(sys.size)))

    def test_periodic_shift(self):
        sys = gen_periodic_shift(2, 2)
        self.assertEqual(sys.labels, ('0', '1', '01', '10'))
        self.assertEqual(squared_distance(sys, sys.index_of('0'), sys.index_of('01')), Fraction(1, 4))
        self.assertEqual(image_label(sys, '01'), '10')
        self.assertEqual(gen_periodic_shift(2, 1).size, 2)

    def test_one_sided_fixed_words(self):
        sys = gen_periodic_shift(3, 1, Sided.ONE)
        self.assertEqual(sys.size, 3)
        self.assertTrue(all(sys.f(x) == x for x in range(sys.size)))

    def test_cycle_two_fixed_and_merge(self):
        cycle = gen_cycle(3)
        self.assertTrue(is_surjective(cycle) and is_injective(cycle))
        self.assertEqual(gen_two_fixed(2).sq[0][1], Fraction(4))
        merge = gen_merge()
        self.assertEqual(merge.images, (2, 2, 2))
        self.assertEqual(merge.sq[0][2], Fraction(4))

    def test_rejects_degenerate_families(self):
        with self.assertRaises(GeneratorError):
            gen_cycle(0)
        with self.assertRaises(GeneratorError):
            gen_two_fixed(0)
        with self.assertRaises(GeneratorError):
            gen_periodic_shift(1, 2)


class GenerateTests(SimpleTestCase):
    def test_dispatch(self):
        self.assertEqual(GeneratorSpec(Family.MERGE).build().labels, ('p', 'q', 'r'))
        self.assertEqual(generate(GeneratorSpec(Family.NOT_ONTO, {'N': 2})).size, 6)
        self.assertEqual(generate(GeneratorSpec(Family.RANDOM, {'points': 4}, seed=7)).size, 4)

    def test_unknown_family(self):
        with self.assertRaises(GeneratorError):
            generate(GeneratorSpec('spiral'))

    def test_bad_parameter_type(self):
        with self.assertRaises(GeneratorError):
            generate(GeneratorSpec(Family.CYCLE, {'k': 'three'}))


class RandomTests(SimpleTestCase):
    def test_deterministic(self):
        for mode in RandomMode.values:
            self.assertEqual(dumps_system(gen_random(5, 6, mode)), dumps_system(gen_random(5, 6, mode)))

    def test_single_point_is_fixed(self):
        sys = gen_random(1, 1)
        self.assertEqual(sys.images, (0,))

    def test_rejects_bad_parameters(self):
        with self.assertRaises(GeneratorError):
            gen_random(1, 0)
        with self.assertRaises(GeneratorError):
            gen_random(1, 11)
        with self.assertRaises(GeneratorError):
            gen_random(1, 4, 'sphere')

    @override_settings(SHADOWLAB={'RANDOM_POINTS_CAP': 3})
    def test_points_cap_follows_settings(self):
        with self.assertRaises(GeneratorError):
            gen_random(1, 4)

    @settings(max_examples=30, deadline=None)
    @given(
        st.integers(min_value=0, max_value=10_000),
        st.integers(min_value=1, max_value=10),
        st.sampled_from(RandomMode.values),
    )
    def test_random_systems_are_valid(self, seed, npoints, mode):
        sys = gen_random(seed, npoints, mode)
        self.assertTrue(validate_system(sys).ok)
        self.assertEqual(sys.size, npoints)
        self.assertEqual(loads_system(dumps_system(sys)).images, sys.images)

    def test_matrix_tables_satisfy_the_triangle_on_first_draw(self):
        for seed in range(20):
            sys = gen_random(seed, 7, RandomMode.MATRIX)
            with self.subTest(seed=seed):
                for i, j, k in itertools.product(range(sys.size), repeat=3):
                    self.assertTrue(triangle_holds(sys.sq[i][k], sys.sq[k][j], sys.sq[i][j]))
