from expansivity.core import restrict_to_core, surjective_core
from harness.cli import ShadowLabCommand
from systems.serialization import dumps_system


class Command(ShadowLabCommand):
    help = 'Surjective core of the map; optionally write the restricted system'

    def add_arguments(self, parser):
        self.add_file_argument(parser)
        parser.add_argument('--restrict', action='store_true')
        parser.add_argument('-o', '--output', help='Destination of the restricted system')

    def run(self, **options):
        sys = self.load(options['file'])
        if options['restrict']:
            self.write_bytes(dumps_system(restrict_to_core(sys)), options.get('output'))
            if not options.get('output'):
                return
        self.write_json(surjective_core(sys).to_dict(sys))
