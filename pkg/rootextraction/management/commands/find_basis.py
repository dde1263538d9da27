from rootextraction.management.base import JsonCommand
from rootextraction.serializers import TorsionBasisSerializer
from rootextraction.torsion import find_basis


class Command(JsonCommand):
    help = 'Find a generator pair of E[l^e] with its Weil pairing.'

    def execute_json(self, **options):
        ctx = self.load_context(options['ctx'])
        return TorsionBasisSerializer(find_basis(ctx, self.make_rng(options['seed']))).data
