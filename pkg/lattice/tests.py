from fractions import Fraction

from django.test import SimpleTestCase

from generators.families import gen_cycle, gen_not_onto, gen_two_fixed
from systems.exceptions import ConsistencyError
from systems.rationals import UNBOUNDED, ZERO, Threshold

from .lattice import LatticeKind, ValueLattice, edge_lattice, monotone_sweep, pair_lattice


def lattice_of(*values):
    return ValueLattice(kind=LatticeKind.PAIR, squares=tuple(Fraction(v) ** 2 for v in values))


class LatticeTests(SimpleTestCase):
    def test_two_fixed_points_edge_lattice(self):
        self.assertEqual(edge_lattice(gen_two_fixed(1)).values, (ZERO, Threshold.of(1)))

    def test_cycle_lattices(self):
        sys = gen_cycle(3)
        self.assertEqual(edge_lattice(sys).labels(), ['0', '1'])
        self.assertEqual(pair_lattice(sys).labels(), ['1'])

    def test_not_onto_pair_minimum(self):
        self.assertEqual(pair_lattice(gen_not_onto(3)).min_positive, Threshold.of(Fraction(1, 8)))

    def test_pair_lattice_has_no_zero(self):
        lattice = pair_lattice(gen_not_onto(2))
        self.assertNotIn(ZERO, lattice)
        self.assertEqual(lattice.values, lattice.positive_values)

    def test_single_point_lattices(self):
        sys = gen_cycle(1)
        self.assertEqual(len(pair_lattice(sys)), 0)
        self.assertIsNone(pair_lattice(sys).min_positive)
        self.assertEqual(edge_lattice(sys).values, (ZERO,))

    def test_next_above(self):
        lattice = lattice_of(0, 1, 2)
        self.assertEqual(lattice.next_above(Threshold.of(1)), Threshold.of(2))
        self.assertEqual(lattice.next_above(Threshold.of(Fraction(1, 2))), Threshold.of(1))
        self.assertEqual(lattice.next_above(Threshold.of(2)), UNBOUNDED)
        self.assertIsNone(lattice.next_above(UNBOUNDED))


class SweepTests(SimpleTestCase):
    def test_always_true_is_unbounded(self):
        self.assertEqual(monotone_sweep(lattice_of(0, 1), lambda t: True), UNBOUNDED)

    def test_always_false_is_zero(self):
        self.assertEqual(monotone_sweep(lattice_of(0, 1), lambda t: False), ZERO)

    def test_threshold_predicate(self):
        one = Threshold.of(1)
        self.assertEqual(monotone_sweep(lattice_of(0, 1), lambda t: t <= one), one)

    def test_sweep_stops_at_first_success(self):
        seen = []

        def predicate(t):
            seen.append(t)
            return t <= Threshold.of(2)

        self.assertEqual(monotone_sweep(lattice_of(1, 2, 3, 4), predicate), Threshold.of(2))
        self.assertEqual(seen, [UNBOUNDED, Threshold.of(4), Threshold.of(3), Threshold.of(2)])

    def test_exhaustive_agrees_on_monotone_predicates(self):
        lattice = lattice_of(1, 2, 3, 4)
        for cut in (0, 1, 2, 3, 4):
            predicate = lambda t, cut=cut: t <= Threshold.of(cut)  # noqa: E731
            self.assertEqual(
                monotone_sweep(lattice, predicate, exhaustive=True),
                monotone_sweep(lattice, predicate),
            )

    def test_exhaustive_rejects_non_monotone(self):
        with self.assertRaises(ConsistencyError):
            monotone_sweep(lattice_of(1, 2, 3), lambda t: t == Threshold.of(2), exhaustive=True)

    def test_default_mode_returns_largest_holding_value_without_raising(self):
        two = Threshold.of(2)
        self.assertEqual(monotone_sweep(lattice_of(1, 2, 3), lambda t: t == two), two)
