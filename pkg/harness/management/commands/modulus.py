from harness.cli import ShadowLabCommand
from shadowing.deciders import Kind
from shadowing.moduli import modulus


class Command(ShadowLabCommand):
    help = 'Exact shadowing modulus delta*(epsilon) for one shadowing kind'

    def add_arguments(self, parser):
        parser.add_argument('--kind', required=True, choices=Kind.values)
        parser.add_argument('--eps', required=True, help='epsilon as p/q')
        parser.add_argument('--exhaustive', action='store_true', help='Evaluate every lattice value')
        self.add_budget_argument(parser)
        self.add_file_argument(parser)

    def run(self, **options):
        sys = self.load(options['file'])
        epsilon = self.threshold(options['eps'], '--eps')
        report = modulus(sys, options['kind'], epsilon, options['budget'], exhaustive=options['exhaustive'])
        self.write_json(report.to_dict(sys))
