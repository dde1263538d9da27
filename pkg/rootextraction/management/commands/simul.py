from rootextraction.exceptions import NON_EXISTENCE_ERRORS
from rootextraction.groups import CurveTorsionGroup
from rootextraction.management.base import EXIT_NO_SOLUTION, CommandFailure, JsonCommand
from rootextraction.serializers import SimulInstanceSerializer, SimulSolutionSerializer
from rootextraction.solver import solve_simultaneous


class Command(JsonCommand):
    help = 'Solve K1 = m1*P + n1*Q, K2 = m2*P + n2*Q for generators P, Q of E[l^e].'

    def add_command_arguments(self, parser):
        parser.add_argument('instance', help='Simultaneous instance JSON file ("-" for stdin).')

    def execute_json(self, **options):
        ctx = self.load_context(options['ctx'])
        inst = self.parse(
            SimulInstanceSerializer,
            self.load_json(options['instance']),
            curve=ctx.curve, field=ctx.field, ctx=ctx, torsion=True,
        ).save()
        try:
            solution = solve_simultaneous(inst, CurveTorsionGroup(ctx), self.make_rng(options['seed']))
        except NON_EXISTENCE_ERRORS as exc:
            raise CommandFailure({'status': 'no_solution', 'kind': exc.code, **exc.extra}, EXIT_NO_SOLUTION)
        return SimulSolutionSerializer(solution).data
