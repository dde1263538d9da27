from rootextraction.management.base import EXIT_ERROR, CommandFailure, JsonCommand
from rootextraction.selftest import run_selftest


class Command(JsonCommand):
    help = 'Run the acceptance suites; "quick" is a short smoke run, "full" runs everything.'
    uses_ctx = False

    def add_command_arguments(self, parser):
        parser.add_argument('--level', choices=('quick', 'full'), default='quick')
        parser.add_argument('--golden', default=None, help='Golden existence CSV for (l, e) = (2, 2).')

    def execute_json(self, **options):
        report = run_selftest(options['level'], rng=self.make_rng(options['seed']), golden=options['golden'])
        if not report['passed']:
            raise CommandFailure(report, EXIT_ERROR)
        return report
