from harness.cli import ShadowLabCommand
from systems.domain import is_injective, is_surjective
from systems.serialization import fingerprint


class Command(ShadowLabCommand):
    help = 'Parse and validate a system document'

    def add_arguments(self, parser):
        self.add_file_argument(parser)

    def run(self, **options):
        sys = self.load(options['file'])
        self.write_json({
            'valid': True,
            'points': sys.size,
            'metric': str(sys.metric_type),
            'surjective': is_surjective(sys),
            'injective': is_injective(sys),
            'fingerprint': fingerprint(sys),
        })
