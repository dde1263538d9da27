from rootextraction.groups import CurveTorsionGroup
from rootextraction.management.base import EXIT_ERROR, CommandFailure, JsonCommand
from rootextraction.serializers import GrepInstanceSerializer, GrepSolutionSerializer, VerdictSerializer
from rootextraction.solver import verify_solution


class Command(JsonCommand):
    help = 'Check a GREP solution: membership, K = m*P + n*Q, and <P, Q> = E[l^e].'
    uses_seed = False

    def add_command_arguments(self, parser):
        parser.add_argument('instance', help='Instance JSON file ("-" for stdin).')
        parser.add_argument('solution', help='Solution JSON file, as written by the solve command.')

    def execute_json(self, **options):
        ctx = self.load_context(options['ctx'])
        context = {'curve': ctx.curve, 'field': ctx.field, 'lenient': True}
        inst = self.parse(GrepInstanceSerializer, self.load_json(options['instance']), **context).save()
        solution = self.parse(GrepSolutionSerializer, self.load_json(options['solution']), **context).validated_data

        verdict = verify_solution(inst, solution['P'], solution['Q'], CurveTorsionGroup(ctx))
        payload = VerdictSerializer(verdict).data
        if not verdict.ok:
            raise CommandFailure(payload, EXIT_ERROR)
        return payload
