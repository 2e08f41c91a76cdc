"""
Exact-value and corpus-level acceptance runs.

The random corpus is seeds 1-50 with 6 to 8 plane points; every FAIL a
suite could emit is replayed inside the suite itself, so a passing report
also means every witness checked out.
"""
from fractions import Fraction

from django.test import SimpleTestCase

from expansivity.characterizations import asymptotic_pairs, limit_shadowing_report
from expansivity.radii import largest_gamma, positive_expansivity_radius
from generators.families import Sided, gen_identity_cantor, gen_n_expansive, gen_not_onto, gen_periodic_shift
from generators.randomized import RandomMode, gen_random
from lattice.lattice import edge_lattice, pair_lattice
from multiplicity.counting import count_at_most
from shadowing.deciders import Kind, decide_h
from shadowing.moduli import modulus
from systems.domain import is_injective
from systems.rationals import Threshold
from systems.serialization import dumps_system, loads_system

from .replay import replay_lasso
from .reports import emit_report
from .suites import (
    run_suite,
    verify_n_shadowing_theorem,
    verify_shadowing_hierarchy,
    verify_uniqueness_suite,
)

CORPUS_SEEDS = range(1, 51)
THIRD = Fraction(1, 3)


def corpus():
    for seed in CORPUS_SEEDS:
        yield seed, gen_random(seed, 6 + seed % 3, RandomMode.PLANE)


def naive_forward_holds(sys, epsilon, delta):
    """Enumerate delta-pseudo-orbits of length up to 2|X| and simulate survivors directly."""
    limit = 2 * sys.size
    successors = [
        [y for y in range(sys.size) if delta.admits(sys.sq[sys.f(x)][y])]
        for x in range(sys.size)
    ]
    stack = [(x, frozenset(z for z in range(sys.size) if epsilon.admits(sys.sq[z][x])), 1) for x in range(sys.size)]
    while stack:
        node, survivors, length = stack.pop()
        if not survivors:
            return False
        if length == limit:
            continue
        for y in successors[node]:
            moved = frozenset(sys.f(z) for z in survivors if epsilon.admits(sys.sq[sys.f(z)][y]))
            stack.append((y, moved, length + 1))
    return True


def full_eps_list(sys):
    """Every positive pairwise distance, without the default thinning."""
    return list(pair_lattice(sys).positive_values)


class ModulusDecayTests(SimpleTestCase):
    def test_not_onto_forward_modulus(self):
        epsilon = Threshold.of(THIRD)
        for N in range(1, 9):
            with self.subTest(N=N):
                sys = gen_not_onto(N)
                report = modulus(sys, Kind.FORWARD, epsilon)
                self.assertEqual(report.modulus.value, Fraction(1, 2 ** N))
                self.assertTrue(naive_forward_holds(sys, epsilon, report.modulus))
                self.assertFalse(naive_forward_holds(sys, epsilon, report.failure.delta))


class NExpansiveExampleTests(SimpleTestCase):
    def test_gamma_sets_and_radii(self):
        quarter = Threshold.of(Fraction(1, 4))
        for n in (2, 3):
            for K in (3, 4):
                for M in (0, 1):
                    with self.subTest(n=n, K=K, M=M):
                        sys = gen_n_expansive(n, K, M)
                        self.assertEqual(len(largest_gamma(sys, quarter)), n)
                        radius = positive_expansivity_radius(sys, n - 1)
                        self.assertLess(radius, Threshold.of(Fraction(1, 2 ** (K - 1))))


class CorpusTests(SimpleTestCase):
    def test_n_shadowing_theorem(self):
        for seed, sys in corpus():
            with self.subTest(seed=seed):
                report = verify_n_shadowing_theorem(sys, n_list=(1, 2), eps_list=full_eps_list(sys))
                self.assertTrue(report.passed, [check.to_dict() for check in report.failures()])

    def test_hierarchy(self):
        systems = [(f'seed {seed}', sys) for seed, sys in corpus()]
        systems += [(f'shift {P}', gen_periodic_shift(2, P, Sided.TWO)) for P in (1, 2, 3)]
        for name, sys in systems:
            with self.subTest(system=name):
                report = verify_shadowing_hierarchy(sys, eps_list=full_eps_list(sys))
                self.assertTrue(report.passed, [check.to_dict() for check in report.failures()])

    def test_uniqueness(self):
        for seed, sys in corpus():
            with self.subTest(seed=seed):
                report = verify_uniqueness_suite(sys, eps_list=full_eps_list(sys))
                self.assertTrue(report.passed, [check.to_dict() for check in report.failures()])
                limit = limit_shadowing_report(sys)
                self.assertEqual(limit.unique_limit, is_injective(sys))
                self.assertEqual(is_injective(sys), not asymptotic_pairs(sys))

    def test_random_hierarchy_example(self):
        self.assertTrue(run_suite(gen_random(7, 8, RandomMode.PLANE), 'hierarchy').passed)


class IdentityPatternTests(SimpleTestCase):
    def test_h_without_uniqueness(self):
        for N in range(2, 7):
            with self.subTest(N=N):
                sys = gen_identity_cantor(N)
                delta = edge_lattice(sys).min_positive
                smallest = Fraction(1, 2 ** N)
                for epsilon in pair_lattice(sys).positive_values:
                    self.assertTrue(decide_h(sys, epsilon, delta).holds)
                    if epsilon.value is not None and epsilon.value <= smallest:
                        continue
                    decision = count_at_most(sys, 1, epsilon, delta)
                    self.assertFalse(decision.holds)
                    self.assertTrue(replay_lasso(sys, epsilon, delta, decision.lasso))
                self.assertTrue(verify_uniqueness_suite(sys).passed)


class DeterminismTests(SimpleTestCase):
    def test_reports_are_byte_identical(self):
        sys = gen_random(3, 6, RandomMode.PLANE)
        first = emit_report(run_suite(sys))
        second = emit_report(run_suite(loads_system(dumps_system(sys))))
        self.assertEqual(first, second)

    def test_documents_round_trip(self):
        for seed in range(100):
            mode = RandomMode.values[seed % 2]
            sys = gen_random(seed, 1 + seed % 10, mode)
            with self.subTest(seed=seed, mode=mode):
                self.assertEqual(dumps_system(loads_system(dumps_system(sys))), dumps_system(sys))
