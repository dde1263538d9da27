from django.core.management.base import BaseCommand, CommandError

from rootextraction.exceptions import RootExtractionError
from rootextraction.model import exhaustive_existence_table, existence_table_csv


class Command(BaseCommand):
    help = 'Write the brute-force existence table over (Z/l^e)^2 as CSV.'

    def add_arguments(self, parser):
        parser.add_argument('--l', type=int, required=True)
        parser.add_argument('--e', type=int, required=True)
        parser.add_argument('--out', default=None, help='Output file (default: stdout).')

    def handle(self, *args, **options):
        try:
            text = existence_table_csv(exhaustive_existence_table(options['l'], options['e']))
        except RootExtractionError as exc:
            raise CommandError(f'{exc.code}: {exc.detail}')
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8', newline='') as handle:
                handle.write(text)
        else:
            self.stdout.write(text, ending='')
