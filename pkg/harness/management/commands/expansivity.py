from expansivity.gamma import GammaMode
from expansivity.radii import expansivity_report
from harness.cli import ShadowLabCommand


class Command(ShadowLabCommand):
    help = 'Positive or two-sided n-expansivity radius'

    def add_arguments(self, parser):
        parser.add_argument('--mode', choices=GammaMode.values, default=GammaMode.POSITIVE)
        parser.add_argument('--n', type=int, default=1)
        self.add_budget_argument(parser)
        self.add_file_argument(parser)

    def run(self, **options):
        sys = self.load(options['file'])
        report = expansivity_report(sys, options['mode'], options['n'], options['budget'])
        self.write_json(report.to_dict(sys))
