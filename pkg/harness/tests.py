import io
import tempfile
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from unittest import mock

import orjson
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from expansivity.radii import is_positively_n_expansive_at
from generators.families import (
    Family,
    GeneratorSpec,
    gen_cycle,
    gen_identity_cantor,
    gen_merge,
    gen_not_onto,
    gen_periodic_shift,
    gen_two_fixed,
)
from multiplicity.counting import count_at_most, decide_unique_h
from shadowing.deciders import Decision, Kind, decide_forward
from shadowing.moduli import ModulusReport
from systems.exceptions import BudgetExceededError, ConsistencyError, UnknownSuiteError
from systems.rationals import UNBOUNDED, ZERO, Threshold
from systems.serialization import fingerprint, loads_system, save_system

from .checks import CheckFailure, CheckSkipped, default_eps_list, run_check
from .cli import EXIT_BUDGET, EXIT_PROPERTY_FAILS, EXIT_USAGE
from .models import RunVerdict, VerificationRun
from .oracle import CachedOracle
from .replay import (
    is_pseudo_orbit,
    replay_gamma_violation,
    replay_lasso,
    replay_shadowing_failure,
    replay_unique_h_failure,
)
from .reports import CheckRecord, ReportFormat, Verdict, VerificationReport, emit_report, parse_report
from .suites import (
    ALL,
    SUITES,
    _check_surjective_moduli,
    _check_unique_s_limit,
    _check_unique_shadowing,
    resolve_suites,
    run_suite,
    verify_fiber_bound,
    verify_uniqueness_suite,
)


def t(value):
    return Threshold.of(Fraction(value))


def sample_report():
    return VerificationReport(
        suite='hierarchy',
        fingerprint='ab' * 32,
        checks=[
            CheckRecord('hierarchy.onto', {'epsilon': '1'}, Verdict.PASS, wall_time=0.5),
            CheckRecord('hierarchy.onto', {'epsilon': '2'}, Verdict.SKIPPED, reason='vacuous: f is not onto'),
        ],
        summary={
            'moduli': [{'epsilon': '1', 'moduli': {'forward': '1', 'twosided': '1'}}],
            'radii': [{'n': 1, 'positive': '1', 'two_sided': 'unbounded', 'vacuous': True}],
            'eta': '1',
        },
    )


class ReportTests(SimpleTestCase):
    def test_verdict_and_counts(self):
        report = sample_report()
        self.assertTrue(report.passed)
        self.assertEqual(report.counts(), {'PASS': 1, 'FAIL': 0, 'SKIPPED': 1})
        report.checks.append(CheckRecord('hierarchy.moduli-order', {}, Verdict.FAIL, reason='broken'))
        self.assertEqual(report.verdict, Verdict.FAIL)
        self.assertEqual([check.reason for check in report.failures()], ['broken'])

    def test_json_omits_timings_by_default(self):
        payload = orjson.loads(emit_report(sample_report()))
        self.assertNotIn('wall_time', payload['checks'][0])
        timed = orjson.loads(emit_report(sample_report(), timings=True))
        self.assertEqual(timed['checks'][0]['wall_time'], 0.5)

    def test_json_parses_back(self):
        report = sample_report()
        self.assertEqual(parse_report(emit_report(report)), report)

    def test_markdown(self):
        text = emit_report(sample_report(), ReportFormat.MARKDOWN)
        self.assertIn('# Verification: hierarchy', text)
        self.assertIn('| hierarchy.onto | epsilon=2 | SKIPPED | vacuous: f is not onto |', text)
        self.assertIn('## Shadowing moduli', text)
        self.assertIn('| 1 | 1 | unbounded | True |', text)

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            emit_report(sample_report(), 'yaml')


class CheckTests(SimpleTestCase):
    def test_pass(self):
        record = run_check('demo', {}, lambda: {'seen': 1})
        self.assertEqual(record.verdict, Verdict.PASS)
        self.assertEqual(record.evidence, {'seen': 1})

    def test_failure_keeps_evidence(self):
        def body():
            raise CheckFailure('nope', {'witness': ['a']})

        record = run_check('demo', {'n': 1}, body)
        self.assertEqual((record.verdict, record.reason), (Verdict.FAIL, 'nope'))
        self.assertEqual(record.evidence, {'witness': ['a']})

    def test_skipped_is_vacuous(self):
        def body():
            raise CheckSkipped('nothing to check')

        record = run_check('demo', {}, body)
        self.assertEqual(record.verdict, Verdict.SKIPPED)
        self.assertEqual(record.reason, 'vacuous: nothing to check')

    def test_budget_is_skipped_with_counts(self):
        def body():
            raise BudgetExceededError('survivor automaton', 10, 11)

        record = run_check('demo', {}, body)
        self.assertEqual(record.verdict, Verdict.SKIPPED)
        self.assertTrue(record.reason.startswith('budget: '))
        self.assertEqual(record.evidence, {'budget': 10, 'explored': 11})

    def test_consistency_error_fails(self):
        def body():
            raise ConsistencyError('pruned and unpruned searches disagree')

        with self.assertLogs('harness.checks', level='ERROR'):
            record = run_check('demo', {}, body)
        self.assertEqual(record.verdict, Verdict.FAIL)
        self.assertTrue(record.reason.startswith('consistency: '))

    def test_default_eps_list(self):
        sys = gen_not_onto(6)
        values = default_eps_list(sys, cap=4)
        self.assertEqual(len(values), 4)
        self.assertEqual(values, sorted(values))
        self.assertEqual(values[0], t('1/64'))
        self.assertEqual(values[-1], t(2))
        self.assertEqual(default_eps_list(gen_cycle(3)), [t(1)])
        self.assertEqual(default_eps_list(gen_cycle(1)), [])


class ReplayTests(SimpleTestCase):
    def test_pseudo_orbit(self):
        sys = gen_two_fixed(1)
        self.assertTrue(is_pseudo_orbit(sys, (0, 1), t('5/4')))
        self.assertFalse(is_pseudo_orbit(sys, (0, 1), t(1)))

    def test_rejects_forged_witness(self):
        sys = gen_two_fixed(1)
        decision = decide_forward(sys, t('1/2'), t('5/4'))
        forged = replace(decision, witness=(0, 0))
        self.assertTrue(replay_shadowing_failure(sys, decision))
        self.assertFalse(replay_shadowing_failure(sys, forged))

    def test_lasso_needs_distinct_origins(self):
        sys = gen_merge()
        lasso = count_at_most(sys, 1, t('3/2'), t('1/2')).lasso
        self.assertTrue(replay_lasso(sys, t('3/2'), t('1/2'), lasso))
        self.assertFalse(replay_lasso(sys, t('3/2'), t('1/2'), lasso, distinct=True))
        self.assertFalse(replay_lasso(sys, t('1/2'), t('1/2'), lasso))

    def test_unique_h(self):
        sys = gen_merge()
        self.assertTrue(replay_unique_h_failure(sys, decide_unique_h(sys, t('3/2'), t('1/2'))))

    def test_gamma_violation(self):
        sys = gen_merge()
        self.assertTrue(replay_gamma_violation(sys, 0, (0, 1), t(2), 1))
        self.assertFalse(replay_gamma_violation(sys, 0, (0, 1), t(2), 2))
        self.assertFalse(replay_gamma_violation(sys, 0, (0, 2), t(2), 1))


class OracleTests(SimpleTestCase):
    def test_answers_are_memoized(self):
        oracle = CachedOracle(gen_two_fixed(1))
        first = oracle.decide('forward', t('1/2'), t('5/4'))
        second = oracle.decide('forward', t('1/2'), t('5/4'))
        self.assertIs(first, second)
        self.assertEqual((len(oracle), oracle.hits), (1, 1))
        self.assertEqual(oracle.positive_radius(1), t(1))


class SuiteTests(SimpleTestCase):
    def test_resolve(self):
        self.assertEqual(resolve_suites(ALL), list(SUITES))
        self.assertEqual(resolve_suites(['fiber', 'fiber', 'hierarchy']), ['fiber', 'hierarchy'])
        with self.assertRaises(UnknownSuiteError):
            resolve_suites(['hierarchy', 'bogus'])

    def test_cycle_passes_everything(self):
        sys = gen_cycle(3)
        report = run_suite(sys)
        self.assertTrue(report.passed, [c.to_dict() for c in report.failures()])
        self.assertEqual(report.suite, ','.join(SUITES))
        self.assertEqual(report.fingerprint, fingerprint(sys))
        self.assertEqual(report.summary['eta'], '1')
        self.assertEqual(report.summary['moduli'][0]['moduli']['forward'], '1')

    def test_merge_passes_everything(self):
        report = run_suite(GeneratorSpec(Family.MERGE))
        self.assertTrue(report.passed, [c.to_dict() for c in report.failures()])
        verdicts = {(c.check_id, str(c.verdict)) for c in report.checks}
        self.assertIn(('hierarchy.onto', 'SKIPPED'), verdicts)
        self.assertIn(('nshadow.lower', 'PASS'), verdicts)

    def test_identity_pattern(self):
        report = verify_uniqueness_suite(gen_identity_cantor(3))
        self.assertTrue(report.passed)
        pattern = next(c for c in report.checks if c.check_id == 'uniqueness.identity-pattern')
        self.assertEqual(pattern.verdict, Verdict.PASS)
        self.assertTrue(pattern.evidence['non_unique'])

    def test_fiber_bound_on_merge(self):
        report = verify_fiber_bound(gen_merge(), n_list=(1,), eps_list=[t(2)])
        self.assertEqual([c.params['r'] for c in report.checks], ['2', 'unbounded'])
        for check in report.checks:
            self.assertEqual(check.verdict, Verdict.PASS)
            self.assertEqual(check.evidence, {'subsets': 1})

    def test_fiber_bound_reaches_the_whole_merge_fiber(self):
        report = verify_fiber_bound(gen_merge(), n_list=(2,), eps_list=[t(2)])
        at_two, unbounded = report.checks
        self.assertEqual(at_two.evidence, {'subsets': 0})
        self.assertEqual(unbounded.params, {'n': 2, 'r': 'unbounded'})
        self.assertEqual(unbounded.verdict, Verdict.PASS)
        self.assertEqual(unbounded.evidence, {'subsets': 1})
        self.assertFalse(is_positively_n_expansive_at(gen_merge(), 2, UNBOUNDED))

    def test_budget_turns_into_skipped(self):
        report = run_suite(gen_periodic_shift(2, 3), 'hierarchy', eps_policy=[t('1/4')], budget=2)
        self.assertTrue(report.passed)
        self.assertTrue(any(c.reason.startswith('budget: ') for c in report.checks))
        self.assertIn('budget', report.summary['moduli'][0]['moduli'].values())

    def test_report_is_deterministic(self):
        first = emit_report(run_suite(gen_not_onto(2), 'hierarchy'))
        second = emit_report(run_suite(gen_not_onto(2), 'hierarchy'))
        self.assertEqual(first, second)


class SkewedOracle(CachedOracle):
    """Answers like CachedOracle, except `skew` may rewrite any modulus report."""

    def __init__(self, sys, skew):
        super().__init__(sys)
        self.skew = skew

    def modulus(self, kind, epsilon, exhaustive=False):
        return self.skew(kind, super().modulus(kind, epsilon, exhaustive=exhaustive))


class EquivalenceCheckTests(SimpleTestCase):
    def test_onto_moduli_on_cycle(self):
        sys = gen_cycle(3)
        record = run_check('equivalence.onto-moduli', {}, lambda: _check_surjective_moduli(sys, CachedOracle(sys), t('1/2')))
        self.assertEqual(record.verdict, Verdict.PASS)
        self.assertEqual(set(record.evidence.values()), {'1'})

    def test_onto_moduli_reject_unconfirmed_witness(self):
        sys = gen_cycle(3)

        def forge(kind, report):
            if kind != Kind.FORWARD:
                return report
            return replace(report, failure=replace(report.failure, witness=(0,)))

        record = run_check(
            'equivalence.onto-moduli', {}, lambda: _check_surjective_moduli(sys, SkewedOracle(sys, forge), t('1/2')),
        )
        self.assertEqual(record.verdict, Verdict.FAIL)
        self.assertFalse(record.evidence['failure']['replayed'])

    def test_onto_moduli_reject_limit_above_plain(self):
        sys = gen_cycle(3)

        def lift(kind, report):
            return replace(report, modulus=UNBOUNDED) if kind == Kind.S_LIMIT else report

        record = run_check(
            'equivalence.onto-moduli', {}, lambda: _check_surjective_moduli(sys, SkewedOracle(sys, lift), t('1/2')),
        )
        self.assertEqual(record.verdict, Verdict.FAIL)
        self.assertEqual(record.reason, 'slimit holds where forward fails')

    def test_onto_moduli_skip_not_onto(self):
        sys = gen_merge()
        record = run_check('equivalence.onto-moduli', {}, lambda: _check_surjective_moduli(sys, CachedOracle(sys), t(1)))
        self.assertEqual(record.verdict, Verdict.SKIPPED)

    def test_h_modulus_matches_forward_below_radius(self):
        sys = gen_cycle(3)
        record = run_check('equivalence.unique-shadowing', {}, lambda: _check_unique_shadowing(sys, CachedOracle(sys), [t('1/4')]))
        self.assertEqual(record.verdict, Verdict.PASS)
        self.assertEqual(record.evidence['rows'], [{'epsilon': '1/4', 'unique': '1', 'forward': '1', 'h': '1'}])

    def test_h_modulus_gap_fails(self):
        sys = gen_cycle(3)

        def shrink(kind, report):
            if kind != Kind.H:
                return report
            forged = Decision(Kind.H, report.epsilon, t('1/2'), False, witness=(0,))
            return ModulusReport(kind=Kind.H, epsilon=report.epsilon, modulus=t('1/4'), failure=forged)

        record = run_check(
            'equivalence.unique-shadowing', {},
            lambda: _check_unique_shadowing(sys, SkewedOracle(sys, shrink), [t('1/4')]),
        )
        self.assertEqual(record.verdict, Verdict.FAIL)
        self.assertEqual(record.reason, 'h-shadowing modulus differs from the shadowing modulus')
        self.assertEqual(record.evidence['h'], '1/4')

    def test_unique_s_limit_on_merge(self):
        report = verify_uniqueness_suite(gen_merge())
        record = next(c for c in report.checks if c.check_id == 'uniqueness.unique-s-limit')
        self.assertEqual(record.verdict, Verdict.PASS)
        self.assertEqual(
            [(row['unique'], row['unique_s_limit']) for row in record.evidence['rows']],
            [('2', '2'), ('0', '0')],
        )

    def test_unique_s_limit_above_unique_fails(self):
        sys = gen_cycle(3)
        oracle = CachedOracle(sys)
        with mock.patch.object(oracle, 'unique_s_limit_modulus', return_value=UNBOUNDED):
            record = run_check('uniqueness.unique-s-limit', {}, lambda: _check_unique_s_limit(sys, oracle, [t(1)]))
        self.assertEqual(record.verdict, Verdict.FAIL)
        self.assertEqual(record.reason, 'unique s-limit shadowing holds where unique shadowing fails')

    def test_unique_s_limit_gap_below_radius_fails(self):
        sys = gen_cycle(3)
        oracle = CachedOracle(sys)
        with mock.patch.object(oracle, 'unique_s_limit_modulus', return_value=ZERO):
            record = run_check('uniqueness.unique-s-limit', {}, lambda: _check_unique_s_limit(sys, oracle, [t('1/4')]))
        self.assertEqual(record.verdict, Verdict.FAIL)
        self.assertEqual(record.reason, 'unique shadowing without unique s-limit shadowing below the radius')
        self.assertEqual(record.evidence['failure']['delta'], '1')
        self.assertFalse(record.evidence['failure']['replayed'])


class CommandTestMixin:
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def document(self, sys, name='system.json'):
        path = Path(self.tmp.name) / name
        save_system(sys, path)
        return str(path)

    def call(self, *args, **options):
        out, err = io.StringIO(), io.StringIO()
        call_command(*args, stdout=out, stderr=err, **options)
        return out.getvalue()

    def call_json(self, *args, **options):
        return orjson.loads(self.call(*args, **options))

    def assertExitCode(self, code, *args, **options):
        with self.assertRaises(CommandError) as caught:
            self.call(*args, **options)
        self.assertEqual(caught.exception.returncode, code)
        return caught.exception


class GenerateCommandTests(CommandTestMixin, SimpleTestCase):
    def test_stdout(self):
        sys = loads_system(self.call('gen', family='not-onto', N=2).encode())
        self.assertEqual(sys.size, 6)

    def test_output_file(self):
        path = Path(self.tmp.name) / 'merge.json'
        self.call('gen', family='merge', output=str(path))
        self.assertEqual(loads_system(path.read_bytes()).labels, ('p', 'q', 'r'))

    def test_two_fixed_distance(self):
        sys = loads_system(self.call('gen', family='two-fixed', d='3/2').encode())
        self.assertEqual(sys.sq[0][1], Fraction(9, 4))

    def test_random_is_reproducible(self):
        first = self.call('gen', family='random', seed=4, points=5, mode='matrix')
        self.assertEqual(first, self.call('gen', family='random', seed=4, points=5, mode='matrix'))

    def test_bad_parameters(self):
        self.assertExitCode(EXIT_USAGE, 'gen', family='not-onto', N=0)
        self.assertExitCode(EXIT_USAGE, 'gen', family='two-fixed', d='2/4')


class AnalysisCommandTests(CommandTestMixin, SimpleTestCase):
    def test_validate(self):
        sys = gen_not_onto(3)
        payload = self.call_json('validate', self.document(sys))
        self.assertEqual(payload['points'], 7)
        self.assertFalse(payload['surjective'])
        self.assertEqual(payload['fingerprint'], fingerprint(sys))

    def test_invalid_document(self):
        path = Path(self.tmp.name) / 'broken.json'
        path.write_bytes(b'{"points": [], "metric": {"type": "matrix", "sq": []}, "map": []')
        self.assertExitCode(EXIT_USAGE, 'validate', str(path))
        self.assertExitCode(EXIT_USAGE, 'validate', str(Path(self.tmp.name) / 'missing.json'))

    def test_modulus(self):
        payload = self.call_json('modulus', self.document(gen_two_fixed(1)), kind='forward', eps='1/2')
        self.assertEqual(payload['modulus'], '1')
        self.assertEqual(payload['failing_delta'], 'unbounded')
        self.assertEqual(len(payload['witness']), 2)

    def test_modulus_exhaustive(self):
        payload = self.call_json('modulus', self.document(gen_not_onto(3)), kind='forward', eps='1/3', exhaustive=True)
        self.assertEqual(payload['modulus'], '1/8')

    def test_decide_holds(self):
        payload = self.call_json('decide', self.document(gen_cycle(3)), kind='h', eps='1/2', delta='1')
        self.assertTrue(payload['holds'])

    def test_decide_fails_with_witness(self):
        path = self.document(gen_two_fixed(1))
        out = io.StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command('decide', path, kind='forward', eps='1/2', delta='5/4', stdout=out)
        self.assertEqual(caught.exception.returncode, EXIT_PROPERTY_FAILS)
        self.assertEqual(orjson.loads(out.getvalue())['witness'], ['a', 'b'])

    def test_decide_usage_errors(self):
        path = self.document(gen_cycle(3))
        self.assertExitCode(EXIT_USAGE, 'decide', path, kind='forward', eps='0', delta='1')
        self.assertExitCode(EXIT_USAGE, 'decide', path, kind='forward', eps='2/4', delta='1')

    def test_decide_budget(self):
        path = self.document(gen_periodic_shift(2, 3))
        self.assertExitCode(EXIT_BUDGET, 'decide', path, kind='forward', eps='1/4', delta='unbounded', budget=2)

    def test_expansivity(self):
        path = self.document(gen_merge())
        payload = self.call_json('expansivity', path, mode='positive', n=1)
        self.assertEqual((payload['radius'], payload['failing_radius']), ('1', '2'))
        payload = self.call_json('expansivity', path, mode='twosided', n=1)
        self.assertTrue(payload['vacuous'])

    def test_gamma(self):
        path = self.document(gen_merge())
        self.assertEqual(self.call_json('gamma', path, point='p', r='3/2')['members'], ['p', 'q'])
        self.assertEqual(self.call_json('gamma', path, point='r', r='3', twosided=True)['members'], ['r'])
        self.assertExitCode(EXIT_USAGE, 'gamma', path, point='p', r='1', twosided=True)
        self.assertExitCode(EXIT_USAGE, 'gamma', path, point='z', r='1')

    def test_count(self):
        payload = self.call_json('count', self.document(gen_merge()), eps='3/2', delta='1/2', cap=3)
        self.assertEqual(payload['max_count'], 2)
        self.assertEqual(payload['witness']['origins'], ['p', 'q'])

    def test_core(self):
        path = self.document(gen_not_onto(3))
        self.assertEqual(self.call_json('core', path)['core'], ['0', '1'])
        restricted = loads_system(self.call('core', path, restrict=True).encode())
        self.assertEqual(restricted.labels, ('0', '1'))


class VerifyCommandTests(CommandTestMixin, TestCase):
    def test_json_report(self):
        payload = self.call_json('verify', self.document(gen_cycle(3)))
        self.assertEqual(payload['verdict'], 'PASS')
        self.assertEqual(payload['suite'], ','.join(SUITES))

    def test_selected_suites_and_eps(self):
        payload = self.call_json(
            'verify', self.document(gen_merge()), suite=['fiber'], eps_list=['2'], n_list=[1],
        )
        self.assertEqual([check['params'] for check in payload['checks']], [{'n': 1, 'r': '2'}, {'n': 1, 'r': 'unbounded'}])

    def test_byte_identical_runs(self):
        path = self.document(gen_not_onto(2))
        self.assertEqual(self.call('verify', path, suite=['hierarchy']), self.call('verify', path, suite=['hierarchy']))

    def test_markdown_with_timings(self):
        text = self.call('verify', self.document(gen_cycle(3)), suite=['equivalence'], format='md', timings=True)
        self.assertIn('| check | params | verdict | reason | time (s) |', text)

    def test_unknown_suite(self):
        self.assertExitCode(EXIT_USAGE, 'verify', self.document(gen_cycle(3)), suite=['bogus'])

    def test_failing_report_exits_one(self):
        report = sample_report()
        report.checks.append(CheckRecord('hierarchy.moduli-order', {}, Verdict.FAIL, reason='broken'))
        with mock.patch('harness.management.commands.verify.run_suite', return_value=report):
            error = self.assertExitCode(EXIT_PROPERTY_FAILS, 'verify', self.document(gen_cycle(3)))
        self.assertIn('hierarchy.moduli-order', str(error))

    def test_save(self):
        sys = gen_merge()
        self.call('verify', self.document(sys), suite=['uniqueness'], save=True)
        run = VerificationRun.objects.for_fingerprint(fingerprint(sys)).get()
        self.assertEqual(run.verdict, RunVerdict.PASS)
        self.assertEqual(run.system_label, 'merge')
        self.assertEqual(run.payload['suite'], 'uniqueness')
        self.assertFalse(VerificationRun.objects.failed().exists())


class VerificationRunTests(TestCase):
    def test_record_counts(self):
        report = sample_report()
        report.checks.append(CheckRecord('hierarchy.moduli-order', {}, Verdict.FAIL, reason='broken'))
        run = VerificationRun.record(report, system_label='manual')
        self.assertEqual((run.passed, run.failed_count, run.skipped), (1, 1, 1))
        self.assertEqual(run.verdict, RunVerdict.FAIL)
        self.assertIn(run, VerificationRun.objects.failed())
        self.assertEqual(str(run), f'hierarchy on {"ab" * 6}: FAIL')

    def test_threshold_strings_in_payload(self):
        report = run_suite(gen_two_fixed(1), 'hierarchy', eps_policy=[t(2)])
        run = VerificationRun.record(report)
        self.assertEqual(run.payload['checks'][0]['params'], {'epsilon': '2'})
