from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from generators.families import gen_cycle, gen_not_onto, gen_periodic_shift, gen_two_fixed
from generators.randomized import RandomMode, gen_random
from harness.replay import replay_shadowing_failure
from lattice.lattice import edge_lattice, pair_lattice
from systems.exceptions import BudgetExceededError, DegenerateThresholdError
from systems.rationals import UNBOUNDED, ZERO, Threshold

from .automaton import SurvivorAutomaton, members, to_mask
from .deciders import (
    Kind,
    decide,
    decide_backward,
    decide_forward,
    decide_h,
    decide_s_limit,
    decide_two_sided,
    decide_two_sided_s_limit,
)
from .graph import lead_in, left_extendable, pseudo_graph
from .moduli import modulus


def t(value):
    return Threshold.of(Fraction(value))


class PseudoGraphTests(SimpleTestCase):
    def test_cycle_at_one_has_only_true_edges(self):
        sys = gen_cycle(3)
        graph = pseudo_graph(sys, t(1))
        self.assertEqual(graph.adjacency, ((1,), (2,), (0,)))

    def test_two_fixed_points_complete_above_distance(self):
        graph = pseudo_graph(gen_two_fixed(1), t('3/2'))
        self.assertEqual(graph.adjacency, ((0, 1), (0, 1)))

    def test_not_onto_small_delta_has_only_true_edges(self):
        sys = gen_not_onto(3)
        graph = pseudo_graph(sys, t('1/8'))
        for x in range(sys.size):
            self.assertEqual(graph.successors(x), (sys.f(x),))

    def test_every_node_keeps_its_true_edge(self):
        sys = gen_random(3, 7)
        for delta in edge_lattice(sys).positive_values:
            graph = pseudo_graph(sys, delta)
            for x in range(sys.size):
                self.assertTrue(graph.has_edge(x, sys.f(x)))

    def test_zero_delta_rejected(self):
        with self.assertRaises(DegenerateThresholdError):
            pseudo_graph(gen_cycle(3), ZERO)

    def test_left_extendable_on_not_onto(self):
        sys = gen_not_onto(3)
        graph = pseudo_graph(sys, t('1/8'))
        self.assertEqual({sys.labels[x] for x in left_extendable(graph)}, {'0', '1'})

    def test_lead_in_reaches_target(self):
        sys = gen_not_onto(3)
        graph = pseudo_graph(sys, t('1/4'))
        target = sys.index_of('1/2')
        cycle, path = lead_in(graph, target)
        self.assertEqual(path[0], cycle[0])
        self.assertEqual(path[-1], target)
        for a, b in zip((*cycle, cycle[0]), (*cycle[1:], cycle[0])):
            self.assertTrue(graph.has_edge(a, b))

    def test_lead_in_unreachable(self):
        sys = gen_not_onto(3)
        graph = pseudo_graph(sys, t('1/8'))
        with self.assertRaises(ValueError):
            lead_in(graph, sys.index_of('-1'))


class AutomatonTests(SimpleTestCase):
    def test_masks(self):
        self.assertEqual(to_mask({0, 2}), 0b101)
        self.assertEqual(list(members(0b101)), [0, 2])

    def test_step_intersects_image_with_ball(self):
        sys = gen_two_fixed(1)
        automaton = SurvivorAutomaton(sys, t('1/2'), t('5/4'))
        self.assertEqual(automaton.step(automaton.initial(0), 1), (1, 0))
        self.assertEqual(automaton.step(automaton.initial(0), 0), (0, 0b01))

    def test_budget_exceeded(self):
        sys = gen_periodic_shift(2, 3)
        with self.assertRaises(BudgetExceededError):
            decide_forward(sys, t('1/4'), UNBOUNDED, budget=2)


class ForwardTests(SimpleTestCase):
    def test_two_fixed_points_hold_below_distance(self):
        self.assertTrue(decide_forward(gen_two_fixed(1), t('1/2'), t(1)).holds)

    def test_two_fixed_points_fail_above_distance(self):
        sys = gen_two_fixed(1)
        decision = decide_forward(sys, t('1/2'), t('5/4'))
        self.assertFalse(decision.holds)
        self.assertEqual([sys.labels[x] for x in decision.witness], ['a', 'b'])
        self.assertTrue(replay_shadowing_failure(sys, decision))

    def test_large_epsilon_always_holds(self):
        sys = gen_not_onto(3)
        self.assertTrue(decide_forward(sys, t(5), UNBOUNDED).holds)

    def test_zero_epsilon_rejected(self):
        with self.assertRaises(DegenerateThresholdError):
            decide_forward(gen_cycle(3), ZERO, t(1))


class LeftInfiniteTests(SimpleTestCase):
    def test_not_onto_backward_holds_at_small_delta(self):
        sys = gen_not_onto(3)
        self.assertTrue(decide_backward(sys, t('1/3'), t('1/8')).holds)
        self.assertTrue(decide_two_sided(sys, t('1/3'), t('1/8')).holds)

    def test_not_onto_backward_fails_at_quarter(self):
        sys = gen_not_onto(3)
        decision = decide_backward(sys, t('1/3'), t('1/4'))
        self.assertFalse(decision.holds)
        self.assertTrue(decision.lead_cycle)
        self.assertTrue(replay_shadowing_failure(sys, decision))

    def test_backward_matches_two_sided(self):
        sys = gen_random(11, 6)
        for epsilon in pair_lattice(sys).positive_values:
            for delta in edge_lattice(sys).positive_values:
                self.assertEqual(
                    decide_backward(sys, epsilon, delta).holds,
                    decide_two_sided(sys, epsilon, delta).holds,
                )

    def test_cycle_only_true_orbits(self):
        for epsilon in ('1/2', '1', '2'):
            self.assertTrue(decide_two_sided(gen_cycle(3), t(epsilon), t(1)).holds)


class HShadowingTests(SimpleTestCase):
    def test_cycle_holds_with_true_edges(self):
        self.assertTrue(decide_h(gen_cycle(3), t('1/2'), t(1)).holds)

    def test_cycle_fails_when_jumps_allowed(self):
        sys = gen_cycle(3)
        decision = decide_h(sys, t('1/2'), t('5/4'))
        self.assertFalse(decision.holds)
        self.assertEqual(decision.witness, (0, 0))
        self.assertTrue(replay_shadowing_failure(sys, decision))


class SLimitTests(SimpleTestCase):
    def test_cycle_holds(self):
        self.assertTrue(decide_s_limit(gen_cycle(3), t('1/2'), t(1)).holds)

    def test_two_fixed_points_large_epsilon(self):
        self.assertTrue(decide_s_limit(gen_two_fixed(1), t('3/2'), t('5/4')).holds)

    def test_two_fixed_points_small_epsilon(self):
        sys = gen_two_fixed(1)
        decision = decide_s_limit(sys, t('1/2'), t('5/4'))
        self.assertFalse(decision.holds)
        self.assertTrue(replay_shadowing_failure(sys, decision))

    def test_two_sided_s_limit_on_cycle(self):
        self.assertTrue(decide_two_sided_s_limit(gen_cycle(3), t('1/2'), t(1)).holds)

    def test_two_sided_s_limit_failure_replays(self):
        sys = gen_two_fixed(1)
        decision = decide_two_sided_s_limit(sys, t('1/2'), t('5/4'))
        self.assertFalse(decision.holds)
        self.assertTrue(replay_shadowing_failure(sys, decision))


class DispatchTests(SimpleTestCase):
    def test_decide_dispatches_every_kind(self):
        sys = gen_cycle(3)
        for kind in Kind.values:
            self.assertTrue(decide(sys, kind, t('1/2'), t(1)).holds)

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            decide(gen_cycle(3), 'sideways', t('1/2'), t(1))

    def test_decision_to_dict_uses_labels(self):
        sys = gen_two_fixed(1)
        payload = decide(sys, Kind.FORWARD, t('1/2'), t('5/4')).to_dict(sys)
        self.assertEqual(payload['witness'], ['a', 'b'])
        self.assertEqual(payload['delta'], '5/4')
        self.assertFalse(payload['holds'])


class ModulusTests(SimpleTestCase):
    def test_two_fixed_points_forward(self):
        sys = gen_two_fixed(1)
        report = modulus(sys, Kind.FORWARD, t('1/2'))
        self.assertEqual(report.modulus, t(1))
        self.assertEqual(report.failure.delta, UNBOUNDED)
        self.assertEqual(report.to_dict(sys)['failing_delta'], 'unbounded')

    def test_not_onto_forward_decays(self):
        for N in (1, 2, 3, 4):
            report = modulus(gen_not_onto(N), Kind.FORWARD, t('1/3'))
            self.assertEqual(report.modulus, t(Fraction(1, 2 ** N)))

    def test_not_onto_backward(self):
        self.assertEqual(modulus(gen_not_onto(3), Kind.BACKWARD, t('1/3')).modulus, t('1/8'))

    def test_cycle_h(self):
        self.assertEqual(modulus(gen_cycle(3), Kind.H, t('1/2')).modulus, t(1))

    def test_periodic_shift_forward(self):
        sys = gen_periodic_shift(2, 2)
        report = modulus(sys, Kind.FORWARD, t('1/4'))
        self.assertEqual(report.modulus, t('1/2'))
        self.assertTrue(replay_shadowing_failure(sys, report.failure))

    def test_unbounded_when_epsilon_covers_everything(self):
        report = modulus(gen_cycle(3), Kind.FORWARD, t(2))
        self.assertEqual(report.modulus, UNBOUNDED)
        self.assertIsNone(report.failure)
        self.assertEqual(report.to_dict(gen_cycle(3))['witness'], [])

    def test_exhaustive_sweep_matches(self):
        sys = gen_not_onto(3)
        self.assertEqual(
            modulus(sys, Kind.FORWARD, t('1/3'), exhaustive=True).modulus,
            modulus(sys, Kind.FORWARD, t('1/3')).modulus,
        )


class ShadowingPropertyTests(SimpleTestCase):
    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=200), st.integers(min_value=2, max_value=6))
    def test_moduli_are_lattice_values(self, seed, npoints):
        sys = gen_random(seed, npoints)
        lattice = edge_lattice(sys)
        for epsilon in pair_lattice(sys).positive_values:
            for kind in (Kind.FORWARD, Kind.H):
                value = modulus(sys, kind, epsilon).modulus
                self.assertTrue(value.is_unbounded or value in lattice)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=200), st.integers(min_value=2, max_value=6))
    def test_failures_replay(self, seed, npoints):
        sys = gen_random(seed, npoints)
        for epsilon in pair_lattice(sys).positive_values:
            for kind in Kind.values:
                report = modulus(sys, kind, epsilon)
                if report.failure is not None:
                    self.assertTrue(replay_shadowing_failure(sys, report.failure), (kind, str(epsilon)))

    @settings(max_examples=20, deadline=None)
    @given(
        st.integers(min_value=1, max_value=200),
        st.integers(min_value=2, max_value=6),
        st.sampled_from(RandomMode.values),
    )
    def test_implications_between_kinds(self, seed, npoints, mode):
        sys = gen_random(seed, npoints, mode)
        deltas = [*edge_lattice(sys).positive_values, UNBOUNDED]
        for epsilon in pair_lattice(sys).positive_values:
            for delta in deltas:
                forward = decide_forward(sys, epsilon, delta).holds
                where = (str(epsilon), str(delta))
                if decide_h(sys, epsilon, delta).holds:
                    self.assertTrue(forward, where)
                if decide_s_limit(sys, epsilon, delta).holds:
                    self.assertTrue(forward, where)
                if forward:
                    self.assertTrue(decide_two_sided(sys, epsilon, delta).holds, where)
                if decide_two_sided_s_limit(sys, epsilon, delta).holds:
                    self.assertTrue(decide_two_sided(sys, epsilon, delta).holds, where)

    @settings(max_examples=20, deadline=None)
    @given(
        st.integers(min_value=1, max_value=200),
        st.integers(min_value=2, max_value=6),
        st.sampled_from(RandomMode.values),
    )
    def test_forward_is_monotone_in_epsilon(self, seed, npoints, mode):
        sys = gen_random(seed, npoints, mode)
        radii = pair_lattice(sys).positive_values
        for delta in [*edge_lattice(sys).positive_values, UNBOUNDED]:
            verdicts = [decide_forward(sys, epsilon, delta).holds for epsilon in radii]
            for smaller, larger in zip(verdicts, verdicts[1:]):
                self.assertLessEqual(smaller, larger, str(delta))
