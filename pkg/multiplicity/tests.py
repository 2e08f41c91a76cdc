from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from expansivity.radii import largest_gamma
from generators.families import gen_cycle, gen_identity_cantor, gen_merge, gen_n_expansive, gen_two_fixed
from generators.randomized import RandomMode, gen_random
from harness.replay import replay_lasso, replay_shadowing_failure, replay_unique_h_failure
from lattice.lattice import edge_lattice, pair_lattice
from shadowing.deciders import Kind
from shadowing.moduli import modulus
from systems.exceptions import BudgetExceededError
from systems.rationals import UNBOUNDED, ZERO, Threshold

from .counting import (
    count_at_most,
    decide_unique_h,
    decide_unique_s_limit,
    max_shadower_count,
    n_shadow_modulus,
    trivial_eta,
    two_sided_count_at_most,
    unique_s_limit_modulus,
)
from .tuples import TupleAutomaton, TupleState


def t(value):
    return Threshold.of(Fraction(value))


class TupleAutomatonTests(SimpleTestCase):
    def test_initial_states_use_distinct_origins(self):
        sys = gen_merge()
        automaton = TupleAutomaton(sys, t('3/2'), t('1/2'))
        self.assertEqual(
            list(automaton.initial_states(2)),
            [TupleState(0, (0, 1)), TupleState(1, (0, 1))],
        )

    def test_positions_may_merge(self):
        sys = gen_merge()
        automaton = TupleAutomaton(sys, t('3/2'), t('1/2'))
        self.assertEqual(list(automaton.successors(TupleState(0, (0, 1)))), [TupleState(2, (2, 2))])

    def test_distinct_mode_drops_merging_tuples(self):
        sys = gen_merge()
        automaton = TupleAutomaton(sys, t('3/2'), t('1/2'), distinct=True)
        self.assertEqual(list(automaton.successors(TupleState(0, (0, 1)))), [])

    def test_budget(self):
        sys = gen_identity_cantor(4)
        automaton = TupleAutomaton(sys, t(2), UNBOUNDED, budget=3)
        with self.assertRaises(BudgetExceededError):
            automaton.explore(automaton.initial_states(2))


class CountTests(SimpleTestCase):
    def test_merge_has_two_shadowers(self):
        sys = gen_merge()
        decision = count_at_most(sys, 1, t('3/2'), t('1/2'))
        self.assertFalse(decision.holds)
        self.assertEqual(
            decision.lasso.to_dict(sys), {'stem': ['p'], 'cycle': ['r'], 'origins': ['p', 'q']},
        )
        self.assertTrue(replay_lasso(sys, t('3/2'), t('1/2'), decision.lasso))

    def test_merge_never_has_three(self):
        self.assertTrue(count_at_most(gen_merge(), 2, t('3/2'), t('1/2')).holds)

    def test_singleton_balls(self):
        for delta in ('1/2', '1'):
            self.assertTrue(count_at_most(gen_cycle(3), 1, t('1/2'), t(delta)).holds)

    def test_n_must_be_positive(self):
        with self.assertRaises(ValueError):
            count_at_most(gen_merge(), 0, t(1), t(1))

    def test_max_count(self):
        sys = gen_merge()
        report = max_shadower_count(sys, t('3/2'), t('1/2'), cap=3)
        self.assertEqual(report.max_count, 2)
        self.assertFalse(report.at_least)
        self.assertEqual(report.to_dict(sys)['max_count'], 2)
        self.assertEqual(max_shadower_count(sys, t('1/2'), t('1/2'), cap=3).max_count, 1)

    def test_max_count_reaches_cap(self):
        sys = gen_merge()
        report = max_shadower_count(sys, t(3), t('1/2'), cap=2)
        self.assertTrue(report.at_least)
        self.assertEqual(report.to_dict(sys)['max_count'], {'at_least': 2})

    def test_n_expansive_deepest_level(self):
        sys = gen_n_expansive(2, 3, 1)
        delta = edge_lattice(sys).min_positive
        self.assertEqual(max_shadower_count(sys, t('1/4'), delta, cap=3).max_count, 2)


class NShadowModulusTests(SimpleTestCase):
    def test_cycle(self):
        self.assertEqual(n_shadow_modulus(gen_cycle(3), 1, t('1/2')), t(1))

    def test_merge_singleton_balls_match_forward_modulus(self):
        sys = gen_merge()
        forward = modulus(sys, Kind.FORWARD, t('1/2')).modulus
        self.assertEqual(n_shadow_modulus(sys, 1, t('1/2')), forward)
        self.assertEqual(forward, t(2))

    def test_merge_is_never_uniquely_shadowed_at_large_epsilon(self):
        self.assertEqual(n_shadow_modulus(gen_merge(), 1, t('3/2')), ZERO)


class UniqueHTests(SimpleTestCase):
    def test_cycle(self):
        self.assertTrue(decide_unique_h(gen_cycle(3), t('1/2'), t(1)).holds)

    def test_merge_has_two_exact_hits(self):
        sys = gen_merge()
        decision = decide_unique_h(sys, t('3/2'), t('1/2'))
        self.assertFalse(decision.holds)
        self.assertTrue(decision.h_holds)
        self.assertEqual([sys.labels[x] for x in decision.witness], ['p', 'r'])
        self.assertEqual([sys.labels[x] for x in decision.origins], ['p', 'q'])
        self.assertTrue(replay_unique_h_failure(sys, decision))

    def test_identity_map(self):
        sys = gen_identity_cantor(4)
        self.assertTrue(decide_unique_h(sys, t('1/2'), edge_lattice(sys).min_positive).holds)

    def test_h_failure_is_reported(self):
        sys = gen_cycle(3)
        decision = decide_unique_h(sys, t('1/2'), t('5/4'))
        self.assertFalse(decision.holds)
        self.assertFalse(decision.h_holds)
        self.assertTrue(replay_unique_h_failure(sys, decision))


class UniqueSLimitTests(SimpleTestCase):
    def test_cycle(self):
        decision = decide_unique_s_limit(gen_cycle(3), t('1/2'), t(1))
        self.assertTrue(decision.holds)
        self.assertIsNone(decision.s_limit)
        self.assertIsNone(decision.count)

    def test_merge_fails_on_the_count(self):
        sys = gen_merge()
        decision = decide_unique_s_limit(sys, t('3/2'), t('1/2'))
        self.assertFalse(decision.holds)
        self.assertIsNone(decision.s_limit)
        self.assertTrue(replay_lasso(sys, t('3/2'), t('1/2'), decision.count.lasso))

    def test_two_fixed_points_fail_on_s_limit(self):
        sys = gen_two_fixed(1)
        decision = decide_unique_s_limit(sys, t('1/2'), t('5/4'))
        self.assertFalse(decision.holds)
        self.assertIsNone(decision.count)
        self.assertTrue(replay_shadowing_failure(sys, decision.s_limit))

    def test_modulus_matches_unique_shadowing_below_the_pair_distance(self):
        for sys in (gen_cycle(3), gen_two_fixed(1), gen_merge()):
            with self.subTest(generator=sys.meta['generator']):
                self.assertEqual(unique_s_limit_modulus(sys, t('1/2')), n_shadow_modulus(sys, 1, t('1/2')))

    def test_merge_modulus_at_large_epsilon(self):
        self.assertEqual(unique_s_limit_modulus(gen_merge(), t('3/2')), ZERO)


class TwoSidedCountTests(SimpleTestCase):
    def test_cycle(self):
        self.assertTrue(two_sided_count_at_most(gen_cycle(3), 1, t('1/2'), t(1)).holds)

    def test_two_fixed_points(self):
        sys = gen_two_fixed(1)
        decision = two_sided_count_at_most(sys, 1, t(2), t('1/2'))
        self.assertFalse(decision.holds)
        self.assertEqual(decision.lasso.stem, ())
        self.assertTrue(replay_lasso(sys, t(2), t('1/2'), decision.lasso, distinct=True))

    def test_merge_core_is_a_single_point(self):
        self.assertTrue(two_sided_count_at_most(gen_merge(), 1, t('3/2'), t('1/2')).holds)


class EtaTests(SimpleTestCase):
    def test_smallest_pair_distance(self):
        self.assertEqual(trivial_eta(gen_merge()), t(1))
        self.assertEqual(trivial_eta(gen_identity_cantor(3)), t('1/8'))

    def test_single_point(self):
        self.assertEqual(trivial_eta(gen_cycle(1)), UNBOUNDED)


class MultiplicityPropertyTests(SimpleTestCase):
    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=300), st.integers(min_value=2, max_value=6))
    def test_lassos_replay(self, seed, npoints):
        sys = gen_random(seed, npoints)
        for epsilon in pair_lattice(sys).positive_values:
            for delta in edge_lattice(sys).positive_values:
                decision = count_at_most(sys, 1, epsilon, delta)
                if not decision.holds:
                    self.assertTrue(replay_lasso(sys, epsilon, delta, decision.lasso))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=300), st.integers(min_value=2, max_value=6))
    def test_true_orbits_have_gamma_many_shadowers(self, seed, npoints):
        sys = gen_random(seed, npoints)
        delta = edge_lattice(sys).min_positive
        for epsilon in pair_lattice(sys).positive_values:
            size = len(largest_gamma(sys, epsilon))
            self.assertGreaterEqual(max_shadower_count(sys, epsilon, delta, cap=size).max_count, size)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=300), st.integers(min_value=2, max_value=6))
    def test_below_eta_shadowers_are_unique(self, seed, npoints):
        sys = gen_random(seed, npoints)
        eta = trivial_eta(sys)
        for delta in edge_lattice(sys).positive_values:
            self.assertTrue(count_at_most(sys, 1, eta, delta).holds)

    @settings(max_examples=20, deadline=None)
    @given(
        st.integers(min_value=1, max_value=300),
        st.integers(min_value=2, max_value=6),
        st.sampled_from(RandomMode.values),
    )
    def test_one_sided_count_bounds_two_sided_count(self, seed, npoints, mode):
        sys = gen_random(seed, npoints, mode)
        deltas = [*edge_lattice(sys).positive_values, UNBOUNDED]
        for epsilon in pair_lattice(sys).positive_values:
            for delta in deltas:
                for n in (1, 2):
                    if count_at_most(sys, n, epsilon, delta).holds:
                        self.assertTrue(
                            two_sided_count_at_most(sys, n, epsilon, delta).holds, (n, str(epsilon), str(delta)),
                        )
