from harness.cli import PropertyFails, ShadowLabCommand
from harness.models import VerificationRun
from harness.reports import ReportFormat, emit_report
from harness.suites import ALL, SUITES, run_suite


class Command(ShadowLabCommand):
    help = 'Run verification suites on a system and emit the report'

    def add_arguments(self, parser):
        parser.add_argument(
            '--suite', action='append', default=None,
            help=f'Suite to run, repeatable: {", ".join([ALL, *SUITES])}',
        )
        parser.add_argument('--eps-list', nargs='+', default=None, help='epsilon values as p/q')
        parser.add_argument('--n-list', nargs='+', type=int, default=[1, 2])
        parser.add_argument('--format', choices=ReportFormat.values, default=ReportFormat.JSON)
        parser.add_argument('--timings', action='store_true', help='Include wall time per check')
        parser.add_argument('--save', action='store_true', help='Archive the run in the database')
        parser.add_argument('-o', '--output', help='Write the report here instead of stdout')
        self.add_budget_argument(parser)
        self.add_file_argument(parser)

    def run(self, **options):
        sys = self.load(options['file'])
        eps_list = None
        if options['eps_list']:
            eps_list = [self.threshold(text, '--eps-list') for text in options['eps_list']]
        report = run_suite(
            sys,
            suites=options['suite'] or [ALL],
            eps_policy=eps_list,
            budget=options['budget'],
            n_list=tuple(options['n_list']),
        )

        rendered = emit_report(report, options['format'], timings=options['timings'])
        if isinstance(rendered, str):
            rendered = rendered.encode()
        self.write_bytes(rendered, options.get('output'))
        if options['save']:
            run = VerificationRun.record(report, system_label=sys.meta.get('generator', options['file']))
            self.stderr.write(f'saved as run {run.pk}')
        if not report.passed:
            failed = ', '.join(sorted({check.check_id for check in report.failures()}))
            raise PropertyFails(f'verification failed: {failed}')
