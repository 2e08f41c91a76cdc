from harness.cli import PropertyFails, ShadowLabCommand
from shadowing.deciders import Kind, decide


class Command(ShadowLabCommand):
    help = 'Decide one shadowing property at (epsilon, delta); exits 1 when it fails'

    def add_arguments(self, parser):
        parser.add_argument('--kind', required=True, choices=Kind.values)
        parser.add_argument('--eps', required=True)
        parser.add_argument('--delta', required=True)
        self.add_budget_argument(parser)
        self.add_file_argument(parser)

    def run(self, **options):
        sys = self.load(options['file'])
        epsilon = self.threshold(options['eps'], '--eps')
        delta = self.threshold(options['delta'], '--delta')
        decision = decide(sys, options['kind'], epsilon, delta, options['budget'])
        self.write_json(decision.to_dict(sys))
        if not decision.holds:
            raise PropertyFails(f'{options["kind"]} fails at epsilon={epsilon}, delta={delta}')
