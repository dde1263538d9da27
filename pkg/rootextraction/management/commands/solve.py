from rootextraction.exceptions import NoSolution
from rootextraction.groups import CurveTorsionGroup
from rootextraction.management.base import EXIT_NO_SOLUTION, CommandFailure, JsonCommand
from rootextraction.serializers import GrepInstanceSerializer, GrepSolutionSerializer
from rootextraction.solver import solve_grep


class Command(JsonCommand):
    help = 'Solve a GREP instance K = m*P + n*Q for generators P, Q of E[l^e].'

    def add_command_arguments(self, parser):
        parser.add_argument('instance', help='Instance JSON file ("-" for stdin).')

    def execute_json(self, **options):
        ctx = self.load_context(options['ctx'])
        inst = self.parse(
            GrepInstanceSerializer,
            self.load_json(options['instance']),
            curve=ctx.curve, field=ctx.field, ctx=ctx, torsion=True,
        ).save()
        try:
            solution = solve_grep(inst, CurveTorsionGroup(ctx), self.make_rng(options['seed']))
        except NoSolution as exc:
            raise CommandFailure({'status': 'no_solution', **exc.extra}, EXIT_NO_SOLUTION)
        return GrepSolutionSerializer(solution).data
