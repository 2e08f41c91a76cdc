from expansivity.gamma import gamma_plus, gamma_two_sided
from harness.cli import ShadowLabCommand


class Command(ShadowLabCommand):
    help = 'Points whose orbits stay within r of the orbit of a given point'

    def add_arguments(self, parser):
        parser.add_argument('--point', required=True, help='Point label')
        parser.add_argument('--r', required=True, help='Radius as p/q')
        parser.add_argument('--twosided', action='store_true', help='Use two-sided orbits (core points only)')
        self.add_file_argument(parser)

    def run(self, **options):
        sys = self.load(options['file'])
        x = self.point(sys, options['point'])
        r = self.threshold(options['r'], '--r')
        gamma = gamma_two_sided(sys, x, r) if options['twosided'] else gamma_plus(sys, x, r)
        self.write_json(gamma.to_dict(sys))
