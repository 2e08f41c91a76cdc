from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from generators.families import (
    gen_cycle,
    gen_identity_cantor,
    gen_merge,
    gen_n_expansive,
    gen_not_onto,
    gen_periodic_shift,
    gen_two_fixed,
)
from generators.randomized import gen_random
from harness.replay import replay_gamma_violation
from lattice.lattice import pair_lattice
from systems.domain import is_surjective
from systems.exceptions import NoTwoSidedOrbitError
from systems.rationals import UNBOUNDED, Threshold

from .characterizations import (
    asymptotic_pairs,
    is_mixing,
    is_transitive,
    limit_shadowing_report,
    sorted_pairs,
)
from .core import periodic_points, restrict_to_core, surjective_core
from .gamma import GammaMode, gamma_plus, gamma_two_sided
from .radii import (
    expansivity_report,
    is_n_expansive_at,
    largest_gamma,
    n_expansivity_radius,
    positive_expansivity_radius,
)


def t(value):
    return Threshold.of(Fraction(value))


def labels(sys, points):
    return {sys.labels[x] for x in points}


class GammaTests(SimpleTestCase):
    def test_two_fixed_points(self):
        sys = gen_two_fixed(1)
        self.assertEqual(labels(sys, gamma_plus(sys, 0, t(2)).members), {'a', 'b'})
        self.assertEqual(labels(sys, gamma_plus(sys, 0, t(1)).members), {'a'})

    def test_merge(self):
        sys = gen_merge()
        gamma = gamma_plus(sys, sys.index_of('p'), t('3/2'))
        self.assertEqual(labels(sys, gamma.members), {'p', 'q'})
        self.assertEqual(gamma.to_dict(sys)['members'], ['p', 'q'])

    def test_crude_horizon_agrees(self):
        sys = gen_merge()
        for x in range(sys.size):
            for r in pair_lattice(sys).positive_values:
                self.assertEqual(gamma_plus(sys, x, r), gamma_plus(sys, x, r, crude=True))

    def test_deepest_level_of_n_expansive(self):
        sys = gen_n_expansive(2, 3, 1)
        gamma = gamma_plus(sys, sys.index_of('(3/8,0)'), t('1/4'))
        self.assertEqual(labels(sys, gamma.members), {'(3/8,0)', '(1/2,0)'})

    def test_two_sided_outside_core(self):
        sys = gen_merge()
        with self.assertRaises(NoTwoSidedOrbitError):
            gamma_two_sided(sys, sys.index_of('p'), t(1))

    def test_two_sided_on_core(self):
        sys = gen_merge()
        gamma = gamma_two_sided(sys, sys.index_of('r'), t(5))
        self.assertEqual(labels(sys, gamma.members), {'r'})
        self.assertEqual(gamma.mode, GammaMode.TWO_SIDED)


class RadiusTests(SimpleTestCase):
    def test_positive_radii(self):
        self.assertEqual(positive_expansivity_radius(gen_two_fixed(1), 1), t(1))
        self.assertEqual(positive_expansivity_radius(gen_merge(), 1), t(1))
        self.assertEqual(positive_expansivity_radius(gen_cycle(3), 1), t(1))

    def test_positive_radius_grows_with_n(self):
        sys = gen_merge()
        self.assertEqual(positive_expansivity_radius(sys, 2), t(2))
        self.assertEqual(positive_expansivity_radius(sys, 3), UNBOUNDED)

    def test_two_sided_radii(self):
        self.assertEqual(n_expansivity_radius(gen_periodic_shift(2, 2), 1), t(1))
        self.assertEqual(n_expansivity_radius(gen_two_fixed(1), 1), t(1))

    def test_merge_two_sided_is_vacuous(self):
        sys = gen_merge()
        self.assertEqual(n_expansivity_radius(sys, 1), UNBOUNDED)
        decision = is_n_expansive_at(sys, 1, t(10))
        self.assertTrue(decision.holds)
        self.assertTrue(decision.vacuous)

    def test_two_sided_witness(self):
        sys = gen_two_fixed(1)
        decision = is_n_expansive_at(sys, 1, t(2))
        self.assertFalse(decision.holds)
        self.assertEqual(decision.witness, (0, 0, 1))

    def test_n_must_be_positive(self):
        with self.assertRaises(ValueError):
            positive_expansivity_radius(gen_cycle(3), 0)

    def test_report_above_radius(self):
        sys = gen_merge()
        report = expansivity_report(sys, GammaMode.POSITIVE, 1)
        payload = report.to_dict(sys)
        self.assertEqual(payload['radius'], '1')
        self.assertEqual(payload['failing_radius'], '2')
        self.assertEqual(payload['witness'], ['p', 'q'])
        self.assertTrue(replay_gamma_violation(sys, 0, report.witness, report.failing_radius, 1))

    def test_vacuous_report(self):
        sys = gen_merge()
        payload = expansivity_report(sys, GammaMode.TWO_SIDED, 1).to_dict(sys)
        self.assertEqual(payload['radius'], 'unbounded')
        self.assertTrue(payload['vacuous'])
        self.assertNotIn('failing_radius', payload)

    def test_n_expansive_example(self):
        sys = gen_n_expansive(2, 3, 1)
        self.assertEqual(len(largest_gamma(sys, t('1/4'))), 2)
        self.assertLess(positive_expansivity_radius(sys, 1), t('1/4'))


class CoreTests(SimpleTestCase):
    def test_cycle_is_its_own_core(self):
        report = surjective_core(gen_cycle(3))
        self.assertEqual(report.core, frozenset({0, 1, 2}))
        self.assertEqual(report.stabilization_index, 0)

    def test_not_onto_core(self):
        sys = gen_not_onto(3)
        self.assertEqual(labels(sys, surjective_core(sys).core), {'0', '1'})
        self.assertEqual(periodic_points(sys), surjective_core(sys).core)

    def test_merge_core(self):
        sys = gen_merge()
        self.assertEqual(surjective_core(sys).to_dict(sys), {'core': ['r'], 'stabilization_index': 1})

    def test_restriction(self):
        restricted = restrict_to_core(gen_not_onto(3))
        self.assertEqual(restricted.labels, ('0', '1'))
        self.assertTrue(is_surjective(restricted))
        self.assertEqual(restricted.meta['restricted'], 'core')


class CharacterizationTests(SimpleTestCase):
    def test_asymptotic_pairs(self):
        self.assertEqual(asymptotic_pairs(gen_cycle(3)), frozenset())
        self.assertEqual(sorted_pairs(asymptotic_pairs(gen_merge())), [(0, 1), (0, 2), (1, 2)])
        self.assertEqual(asymptotic_pairs(gen_identity_cantor(3)), frozenset())

    def test_transitivity_and_mixing(self):
        self.assertTrue(is_transitive(gen_cycle(3)))
        self.assertFalse(is_mixing(gen_cycle(3)))
        self.assertTrue(is_transitive(gen_cycle(1)))
        self.assertTrue(is_mixing(gen_cycle(1)))
        self.assertFalse(is_transitive(gen_two_fixed(1)))
        self.assertFalse(is_mixing(gen_two_fixed(1)))

    def test_limit_reports(self):
        self.assertEqual(
            limit_shadowing_report(gen_cycle(3)).to_dict(),
            {'limit_shadowing': True, 'unique_limit': True, 'injective': True, 'asymptotic_pair_count': 0},
        )
        merge = limit_shadowing_report(gen_merge())
        self.assertFalse(merge.unique_limit)
        self.assertFalse(merge.injective)
        self.assertEqual(merge.asymptotic_pair_count, 3)
        self.assertTrue(limit_shadowing_report(gen_identity_cantor(4)).unique_limit)


class ExpansivityPropertyTests(SimpleTestCase):
    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=7))
    def test_radius_is_a_pair_value(self, seed, npoints):
        sys = gen_random(seed, npoints)
        lattice = pair_lattice(sys)
        for n in (1, 2):
            radius = positive_expansivity_radius(sys, n)
            self.assertTrue(radius.is_unbounded or radius in lattice)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=1, max_value=500), st.integers(min_value=2, max_value=7))
    def test_gamma_grows_with_radius(self, seed, npoints):
        sys = gen_random(seed, npoints, 'matrix')
        values = pair_lattice(sys).positive_values
        for x in range(sys.size):
            for small, large in zip(values, values[1:]):
                self.assertLessEqual(gamma_plus(sys, x, small).members, gamma_plus(sys, x, large).members)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=7))
    def test_core_laws(self, seed, npoints):
        sys = gen_random(seed, npoints)
        core = surjective_core(sys).core
        self.assertTrue(core)
        self.assertEqual({sys.f(x) for x in core}, set(core))
        self.assertEqual(bool(asymptotic_pairs(sys)), len(set(sys.images)) < sys.size)
