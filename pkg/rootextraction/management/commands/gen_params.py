from rootextraction.management.base import JsonCommand
from rootextraction.params import ParamRequest, gen_params
from rootextraction.serializers import TorsionContextSerializer


class Command(JsonCommand):
    help = 'Find the smallest f with p = l^e * f - 1 prime, p = 3 (mod 4), and print the context JSON.'
    uses_ctx = False
    uses_seed = False

    def add_command_arguments(self, parser):
        parser.add_argument('--l', type=int, required=True, help='Small prime l.')
        parser.add_argument('--e', type=int, required=True, help='Exponent e >= 1.')
        parser.add_argument('--f-max', type=int, default=None, help='Largest cofactor to try.')
        parser.add_argument(
            '--sign', type=int, choices=(-1, 1), default=-1,
            help='Family p = l^e * f + sign; only -1 is supported.',
        )

    def execute_json(self, **options):
        request = ParamRequest(l=options['l'], e=options['e'], f_max=options['f_max'], sign=options['sign'])
        return TorsionContextSerializer(gen_params(request)).data
