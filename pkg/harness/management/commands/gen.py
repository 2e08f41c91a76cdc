from generators.families import Boundary, Family, GeneratorSpec, Sided
from generators.randomized import RandomMode
from harness.cli import ShadowLabCommand
from systems.rationals import parse_rational
from systems.serialization import dumps_system

PARAMS = ('n', 'K', 'M', 'N', 'k', 'alphabet', 'period', 'points', 'mode', 'boundary', 'sided')


class Command(ShadowLabCommand):
    help = 'Generate a system document from a named family'

    def add_arguments(self, parser):
        parser.add_argument('--family', required=True, choices=Family.values)
        parser.add_argument('--n', type=int)
        parser.add_argument('--K', type=int)
        parser.add_argument('--M', type=int)
        parser.add_argument('--N', type=int)
        parser.add_argument('--k', type=int, help='Cycle length')
        parser.add_argument('--d', help='Distance between the two fixed points (p/q)')
        parser.add_argument('--alphabet', type=int)
        parser.add_argument('--period', type=int)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--points', type=int)
        parser.add_argument('--mode', choices=RandomMode.values)
        parser.add_argument('--boundary', choices=Boundary.values)
        parser.add_argument('--sided', choices=Sided.values)
        parser.add_argument('-o', '--output', help='Write the document here instead of stdout')

    def run(self, **options):
        params = {name: options[name] for name in PARAMS if options.get(name) is not None}
        if options.get('d') is not None:
            params['d'] = parse_rational(options['d'], field='--d')
        spec = GeneratorSpec(family=options['family'], params=params, seed=options['seed'])
        sys = spec.build()
        self.write_bytes(dumps_system(sys), options.get('output'))
        if options.get('output'):
            self.stderr.write(f'{sys.meta["generator"]}: {sys.size} points written to {options["output"]}')
