from harness.cli import ShadowLabCommand
from multiplicity.counting import max_shadower_count


class Command(ShadowLabCommand):
    help = 'Largest number of distinct eternal epsilon-shadowers of one delta-pseudo-orbit'

    def add_arguments(self, parser):
        parser.add_argument('--eps', required=True)
        parser.add_argument('--delta', required=True)
        parser.add_argument('--cap', type=int, default=None)
        self.add_budget_argument(parser)
        self.add_file_argument(parser)

    def run(self, **options):
        sys = self.load(options['file'])
        epsilon = self.threshold(options['eps'], '--eps')
        delta = self.threshold(options['delta'], '--delta')
        report = max_shadower_count(sys, epsilon, delta, cap=options['cap'], budget=options['budget'])
        self.write_json(report.to_dict(sys))
