import io
import json
import random
import tempfile
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, tag

from rootextraction.curve import Point
from rootextraction.serializers import PointField, TorsionContextSerializer
from rootextraction.torsion import TorsionContext, find_basis

GOLDEN = Path(__file__).resolve().parent.parent / 'golden' / 'existence_2_2.csv'


class CommandTestCase(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.ctx = TorsionContext.from_params(47, 2, 4, 3)
        cls.basis = find_basis(cls.ctx, random.Random(12))

    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = Path(tmp.name)
        self.ctx_file = self.write('ctx.json', TorsionContextSerializer(self.ctx).data)

    def write(self, name, payload):
        path = self.tmp / name
        path.write_text(json.dumps(payload), encoding='utf-8')
        return str(path)

    def point(self, pt):
        return PointField().to_representation(pt)

    def combine(self, m, P, n, Q):
        E = self.ctx.curve
        return E.add(E.scalar_mul(m, P), E.scalar_mul(n, Q))

    def instance(self, K, m, n):
        return {'K': self.point(K), 'm': str(m), 'n': str(n)}

    def run_command(self, name, *args, **options):
        """(payload, exit code) of a JSON command."""
        out = io.StringIO()
        try:
            call_command(name, *args, stdout=out, **options)
            returncode = 0
        except CommandError as exc:
            returncode = exc.returncode
        return json.loads(out.getvalue()), returncode


class GenParamsCommandTests(CommandTestCase):

    def test_fixture_context(self):
        payload, code = self.run_command('gen_params', l=3, e=3)
        self.assertEqual(code, 0)
        self.assertEqual((payload['p'], payload['f']), ('107', '4'))
        self.assertEqual(payload['b'], {'c0': '0', 'c1': '0'})

    def test_plus_one_family(self):
        payload, code = self.run_command('gen_params', l=2, e=4, sign=1)
        self.assertEqual(code, 1)
        self.assertEqual((payload['status'], payload['kind']), ('error', 'unsupported_family'))

    def test_not_found(self):
        payload, code = self.run_command('gen_params', l=2, e=1, f_max=1)
        self.assertEqual((payload['kind'], code), ('not_found', 1))

    def test_output_file(self):
        out = self.tmp / 'generated.json'
        call_command('gen_params', l=2, e=4, out=str(out), stdout=io.StringIO())
        self.assertEqual(json.loads(out.read_text())['p'], '47')


class FindBasisCommandTests(CommandTestCase):

    def test_seeded_basis(self):
        first, code = self.run_command('find_basis', ctx=self.ctx_file, seed=3)
        second, _ = self.run_command('find_basis', ctx=self.ctx_file, seed=3)
        self.assertEqual(code, 0)
        self.assertEqual(first, second)
        self.assertEqual(set(first), {'P_gen', 'Q_gen', 'pairing'})

    def test_missing_context_file(self):
        payload, code = self.run_command('find_basis', ctx=str(self.tmp / 'missing.json'))
        self.assertEqual((payload['kind'], code), ('malformed', 1))

    def test_other_curve_is_rejected(self):
        data = dict(TorsionContextSerializer(self.ctx).data, b={'c0': '1', 'c1': '0'})
        payload, code = self.run_command('find_basis', ctx=self.write('other.json', data), seed=3)
        self.assertEqual((payload['kind'], code), ('bad_params', 1))

    def test_seed_out_of_range(self):
        for seed in (-1, 2 ** 64):
            with self.subTest(seed=seed):
                payload, code = self.run_command('find_basis', ctx=self.ctx_file, seed=seed)
                self.assertEqual((payload['kind'], code), ('invalid_seed', 1))

    def test_largest_seed(self):
        _, code = self.run_command('find_basis', ctx=self.ctx_file, seed=2 ** 64 - 1)
        self.assertEqual(code, 0)


class SolveCommandTests(CommandTestCase):

    def test_solution_passes_verify(self):
        P, Q = self.basis.P_gen, self.basis.Q_gen
        for m, n in ((3, 5), (4, 12), (0, 7)):
            instance = self.write('instance.json', self.instance(self.combine(m, P, n, Q), m, n))
            solution, code = self.run_command('solve', instance, ctx=self.ctx_file, seed=1)
            self.assertEqual((solution['status'], code), ('ok', 0))
            self.assertEqual(solution['case'], 1 if m % 2 or n % 2 else 2)

            solution_file = self.write('solution.json', solution)
            verdict, code = self.run_command('verify', instance, solution_file, ctx=self.ctx_file)
            self.assertEqual(code, 0)
            self.assertEqual(verdict, {'status': 'ok', 'in_group': True, 'equation': True, 'independent': True, 'ok': True})

    def test_seeded_runs_agree(self):
        instance = self.write('instance.json', self.instance(self.basis.P_gen, 1, 0))
        first, _ = self.run_command('solve', instance, ctx=self.ctx_file, seed=42)
        second, _ = self.run_command('solve', instance, ctx=self.ctx_file, seed=42)
        self.assertEqual(first, second)

    def test_no_solution(self):
        instance = self.write('instance.json', self.instance(self.basis.P_gen, 2, 2))
        payload, code = self.run_command('solve', instance, ctx=self.ctx_file)
        self.assertEqual(code, 2)
        self.assertEqual(payload, {'status': 'no_solution', 'u': 4, 'r': 1})

    def test_off_curve_point(self):
        F = self.ctx.field
        instance = self.write('instance.json', self.instance(Point(F.fp2(1), F.fp2(1)), 1, 1))
        payload, code = self.run_command('solve', instance, ctx=self.ctx_file)
        self.assertEqual(code, 1)
        self.assertEqual((payload['status'], payload['kind']), ('error', 'off_curve'))

    def test_malformed_json(self):
        path = self.tmp / 'broken.json'
        path.write_text('{"K": ', encoding='utf-8')
        payload, code = self.run_command('solve', str(path), ctx=self.ctx_file)
        self.assertEqual((payload['kind'], code), ('malformed', 1))

    def test_instance_from_stdin(self):
        data = json.dumps(self.instance(self.basis.Q_gen, 0, 1))
        with mock.patch('sys.stdin', io.StringIO(data)):
            payload, code = self.run_command('solve', '-', ctx=self.ctx_file, seed=0)
        self.assertEqual((payload['status'], code), ('ok', 0))


class VerifyCommandTests(CommandTestCase):

    def verify(self, K, m, n, P, Q):
        instance = self.write('instance.json', self.instance(K, m, n))
        solution = self.write('solution.json', {'P': self.point(P), 'Q': self.point(Q)})
        return self.run_command('verify', instance, solution, ctx=self.ctx_file)

    def test_tampered_solution(self):
        E, F = self.ctx.curve, self.ctx.field
        P, Q = self.basis.P_gen, self.basis.Q_gen
        K = self.combine(2, P, 3, Q)
        # n is odd, so adding the 2-torsion point (0, 0) to Q shifts m*P + n*Q
        tampered = E.add(Q, E.point(F.zero, F.zero))
        verdict, code = self.verify(K, 2, 3, P, tampered)
        self.assertEqual(code, 1)
        self.assertEqual(verdict['status'], 'rejected')
        self.assertFalse(verdict['equation'])

    def test_dependent_pair(self):
        P = self.basis.P_gen
        E = self.ctx.curve
        verdict, code = self.verify(E.scalar_mul(4, P), 1, 1, P, E.scalar_mul(3, P))
        self.assertEqual(code, 1)
        self.assertEqual((verdict['equation'], verdict['independent']), (True, False))

    def test_point_outside_the_group(self):
        F = self.ctx.field
        verdict, code = self.verify(self.basis.P_gen, 1, 0, Point(F.fp2(1), F.fp2(1)), self.basis.Q_gen)
        self.assertEqual(code, 1)
        self.assertFalse(verdict['in_group'])


class SimulCommandTests(CommandTestCase):

    def simul(self, K1, K2, m1, n1, m2, n2, seed=0):
        instance = self.write('simul.json', {
            'K1': self.point(K1), 'K2': self.point(K2),
            'm1': str(m1), 'n1': str(n1), 'm2': str(m2), 'n2': str(n2),
        })
        return self.run_command('simul', instance, ctx=self.ctx_file, seed=seed)

    def test_identity_matrix(self):
        P, Q = self.basis.P_gen, self.basis.Q_gen
        payload, code = self.simul(P, Q, 1, 0, 0, 1)
        self.assertEqual(code, 0)
        self.assertEqual((payload['branch'], payload['P'], payload['Q']), ('unique', self.point(P), self.point(Q)))

    def test_degenerate_system(self):
        P = self.basis.P_gen
        payload, code = self.simul(P, P, 1, 1, 1, 1)
        self.assertEqual((payload['status'], payload['kind'], code), ('error', 'degenerate_system', 1))

    def test_coset_branch(self):
        P, Q = self.basis.P_gen, self.basis.Q_gen
        payload, code = self.simul(self.combine(2, P, 1, Q), self.combine(0, P, 3, Q), 2, 1, 0, 3)
        self.assertEqual(code, 0)
        self.assertEqual((payload['branch'], payload['r']), ('coset', 1))

    def test_no_root(self):
        # 2P = K1 has no solution when K1 has full order
        P, Q = self.basis.P_gen, self.basis.Q_gen
        payload, code = self.simul(P, Q, 2, 0, 0, 1)
        self.assertEqual(code, 2)
        self.assertEqual((payload['status'], payload['kind']), ('no_solution', 'not_a_power'))


class ExistenceTableCommandTests(SimpleTestCase):

    def test_matches_golden_file(self):
        out = io.StringIO()
        call_command('existence_table', l=2, e=2, stdout=out)
        self.assertEqual(out.getvalue(), GOLDEN.read_text(encoding='utf-8'))

    def test_size_guard(self):
        with self.assertRaisesMessage(CommandError, 'too_large'):
            call_command('existence_table', l=5, e=2, stdout=io.StringIO())


@tag('slow')
class SelftestCommandTests(CommandTestCase):

    def test_quick_level_passes(self):
        payload, code = self.run_command('selftest', level='quick', seed=0)
        self.assertEqual((payload['status'], code), ('ok', 0))
        self.assertTrue(all(suite['passed'] for suite in payload['suites']))
