import math
import random

from django.test import SimpleTestCase, override_settings, tag

from rootextraction.exceptions import (
    DegenerateSystem,
    NoGeneratingSolution,
    NoSolution,
    NotAPower,
    PreconditionViolated,
    TooLarge,
)
from rootextraction.groups import CurveTorsionGroup
from rootextraction.model import ModelTorsionGroup, exhaustive_existence_table, generating_pairs
from rootextraction.solver import (
    GrepInstance,
    SimulInstance,
    existence_check,
    lr_root,
    lvaluation,
    solve_case1,
    solve_case2,
    solve_grep,
    solve_simultaneous,
    verify_solution,
)
from rootextraction.torsion import TorsionContext


def solves(inst, group, rng):
    """True iff solve_grep returns a pair that passes verification."""
    try:
        solution = solve_grep(inst, group, rng)
    except NoSolution:
        return False
    return verify_solution(inst, solution.P, solution.Q, group).ok


class ValuationTests(SimpleTestCase):

    def test_lvaluation(self):
        self.assertEqual(lvaluation(0, 2, 2), 2)
        self.assertEqual(lvaluation(16, 2, 4), 4)
        self.assertEqual(lvaluation(4, 2, 3), 2)
        self.assertEqual(lvaluation(6, 2, 4), 1)
        self.assertEqual(lvaluation(5, 3, 3), 0)

    def test_existence_check(self):
        G = ModelTorsionGroup(2, 2)
        report = existence_check(GrepInstance(G.element(2, 0), 2, 0), G)
        self.assertEqual((report.solvable, report.u, report.r), (True, 1, 1))
        report = existence_check(GrepInstance(G.element(1, 0), 2, 2), G)
        self.assertEqual((report.solvable, report.u, report.r), (False, 2, 1))
        report = existence_check(GrepInstance(G.identity, 0, 0), G)
        self.assertEqual((report.solvable, report.u, report.r), (True, 0, 2))


class ModelSolverTests(SimpleTestCase):

    def setUp(self):
        self.rng = random.Random(22)

    def test_exhaustive_agreement_at_two_squared(self):
        group = ModelTorsionGroup(2, 2)
        for row in exhaustive_existence_table(2, 2):
            inst = GrepInstance(group.element(row.k0, row.k1), row.m, row.n)
            self.assertEqual(solves(inst, group, self.rng), row.solvable, row)

    def test_case_preconditions(self):
        G = ModelTorsionGroup(2, 3)
        with self.assertRaises(PreconditionViolated):
            solve_case1(GrepInstance(G.element(2, 0), 2, 4), G, self.rng)
        with self.assertRaises(PreconditionViolated):
            solve_case1(GrepInstance(G.element(2, 0), 1, 0), G, self.rng)
        with self.assertRaises(PreconditionViolated):
            solve_case2(GrepInstance(G.element(1, 0), 1, 2), G, self.rng)

    def test_case1_with_l_dividing_n(self):
        G = ModelTorsionGroup(2, 3)
        inst = GrepInstance(G.element(3, 5), 3, 4)
        solution = solve_case1(inst, G, self.rng)
        self.assertTrue(verify_solution(inst, solution.P, solution.Q, G).ok)
        self.assertEqual(solution.case, 1)

    def test_case2_reports_the_valuation(self):
        G = ModelTorsionGroup(2, 3)
        inst = GrepInstance(G.element(2, 6), 4, 2)
        solution = solve_grep(inst, G, self.rng)
        self.assertEqual((solution.case, solution.u, solution.r), (2, 2, 1))

    def test_no_solution_carries_u_and_r(self):
        G = ModelTorsionGroup(2, 3)
        with self.assertRaises(NoSolution) as cm:
            solve_grep(GrepInstance(G.element(1, 0), 2, 2), G, self.rng)
        self.assertEqual(cm.exception.extra, {'u': 3, 'r': 1})

    def test_lr_root(self):
        G = ModelTorsionGroup(2, 3)
        basis = G.find_basis(self.rng)
        for _ in range(50):
            r = self.rng.randint(0, 3)
            K = G.mul(2 ** r, G.element(self.rng.randrange(8), self.rng.randrange(8)))
            self.assertEqual(G.mul(2 ** r, lr_root(K, r, basis, G)), K)
        with self.assertRaises(NotAPower):
            lr_root(G.element(1, 2), 1, basis, G)

    @tag('slow')
    def test_exhaustive_agreement(self):
        for l, e in ((2, 3), (3, 2)):
            group = ModelTorsionGroup(l, e)
            for row in exhaustive_existence_table(l, e):
                inst = GrepInstance(group.element(row.k0, row.k1), row.m, row.n)
                self.assertEqual(solves(inst, group, self.rng), row.solvable, row)

    @tag('slow')
    def test_combinations_of_generators_keep_full_order(self):
        G = ModelTorsionGroup(2, 3)
        coefficients = [(m, n) for m in range(8) for n in range(8) if math.gcd(m, n) % 2]
        for P, Q in generating_pairs(2, 3):
            P, Q = G.element(*P), G.element(*Q)
            for m, n in coefficients:
                self.assertEqual(G.lpower_order(G.combine(m, P, n, Q)), 3)


def congruence_solution(inst, q):
    """The unique (P, Q) of a unit-determinant system, coordinate by coordinate."""
    P, Q = [], []
    for j in range(2):
        a, b = next(
            (a, b) for a in range(q) for b in range(q)
            if (inst.m1 * a + inst.n1 * b - inst.K1.coords[j]) % q == 0
            and (inst.m2 * a + inst.n2 * b - inst.K2.coords[j]) % q == 0
        )
        P.append(a)
        Q.append(b)
    return tuple(P), tuple(Q)


class SimultaneousModelTests(SimpleTestCase):

    def setUp(self):
        self.G = ModelTorsionGroup(2, 3)
        self.rng = random.Random(31)

    def test_identity_matrix(self):
        G = self.G
        K1, K2 = G.element(1, 2), G.element(3, 3)
        solution = solve_simultaneous(SimulInstance(K1, K2, 1, 0, 0, 1), G, self.rng)
        self.assertEqual((solution.P, solution.Q, solution.branch), (K1, K2, 'unique'))

    def test_swapped_coefficients(self):
        G = self.G
        K1, K2 = G.element(1, 0), G.element(0, 1)
        solution = solve_simultaneous(SimulInstance(K1, K2, 0, 1, 1, 0), G, self.rng)
        self.assertEqual((solution.P, solution.Q), (K2, K1))

    def test_degenerate_determinant(self):
        G = self.G
        with self.assertRaises(DegenerateSystem):
            solve_simultaneous(SimulInstance(G.element(1, 0), G.element(2, 0), 1, 1, 2, 2), G, self.rng)

    def test_unique_branch_against_congruence_oracle(self):
        G = self.G
        for _ in range(300):
            m1, n1, m2, n2 = (self.rng.randrange(8) for _ in range(4))
            if (m1 * n2 - m2 * n1) % 2 == 0:
                continue
            K1 = G.element(self.rng.randrange(8), self.rng.randrange(8))
            K2 = G.element(self.rng.randrange(8), self.rng.randrange(8))
            inst = SimulInstance(K1, K2, m1, n1, m2, n2)
            P, Q = congruence_solution(inst, 8)
            if (P[0] * Q[1] - P[1] * Q[0]) % 2 == 0:
                with self.assertRaises(NoGeneratingSolution):
                    solve_simultaneous(inst, G, self.rng)
                continue
            solution = solve_simultaneous(inst, G, self.rng)
            self.assertEqual((solution.P.coords, solution.Q.coords), (P, Q))

    def test_coset_branch(self):
        G = self.G
        P, Q = G.element(1, 0), G.element(0, 1)
        inst = SimulInstance(G.mul(2, P), Q, 2, 0, 0, 1)
        solution = solve_simultaneous(inst, G, self.rng)
        self.assertEqual((solution.branch, solution.r), ('coset', 1))
        self.assertEqual(G.mul(2, solution.P), G.mul(2, P))
        self.assertEqual(solution.Q, Q)
        self.assertTrue(G.is_independent(solution.P, solution.Q))

    def test_coset_size_guard(self):
        G = self.G
        P, Q = G.element(1, 0), G.element(0, 1)
        inst = SimulInstance(G.mul(2, P), Q, 2, 0, 0, 1)
        # the root coset at r = 1 has 2^2 elements
        with override_settings(ROOT_EXTRACTION={'COSET_SEARCH_LIMIT': 3}), self.assertRaises(TooLarge):
            solve_simultaneous(inst, G, self.rng)
        with override_settings(ROOT_EXTRACTION={'COSET_SEARCH_LIMIT': 4}):
            self.assertEqual(solve_simultaneous(inst, G, self.rng).branch, 'coset')

    def test_coset_branch_against_brute_force(self):
        G = self.G
        pairs = list(generating_pairs(2, 3))
        checked = 0
        while checked < 40:
            m1, n1, m2, n2 = (self.rng.randrange(8) for _ in range(4))
            det = (m1 * n2 - m2 * n1) % 8
            if det == 0 or det % 2 or all(c % 2 == 0 for c in (m1, n1, m2, n2)):
                continue
            K1 = G.element(self.rng.randrange(8), self.rng.randrange(8))
            K2 = G.element(self.rng.randrange(8), self.rng.randrange(8))
            exists = any(
                G.combine(m1, G.element(*P), n1, G.element(*Q)) == K1
                and G.combine(m2, G.element(*P), n2, G.element(*Q)) == K2
                for P, Q in pairs
            )
            try:
                solve_simultaneous(SimulInstance(K1, K2, m1, n1, m2, n2), G, self.rng)
                solved = True
            except (NotAPower, NoGeneratingSolution):
                solved = False
            self.assertEqual(solved, exists, (m1, n1, m2, n2, K1, K2))
            checked += 1


class CurveSolverTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.groups = (
            CurveTorsionGroup(TorsionContext.from_params(47, 2, 4, 3)),
            CurveTorsionGroup(TorsionContext.from_params(107, 3, 3, 4)),
        )

    def setUp(self):
        self.rng = random.Random(2048)

    def random_instance(self, group, m=None, n=None):
        basis = group.find_basis(self.rng)
        m = self.rng.randrange(group.order) if m is None else m
        n = self.rng.randrange(group.order) if n is None else n
        return GrepInstance(group.combine(m, basis.P_gen, n, basis.Q_gen), m, n)

    def test_random_solvable_instances(self):
        for group in self.groups:
            for _ in range(30):
                inst = self.random_instance(group)
                solution = solve_grep(inst, group, self.rng)
                self.assertTrue(verify_solution(inst, solution.P, solution.Q, group).ok, inst)

    def test_both_cases_on_the_curve(self):
        group = self.groups[0]
        inst = self.random_instance(group, m=5, n=4)
        self.assertEqual(solve_grep(inst, group, self.rng).case, 1)
        inst = self.random_instance(group, m=4, n=12)
        solution = solve_grep(inst, group, self.rng)
        self.assertEqual((solution.case, solution.r), (2, 2))
        self.assertTrue(verify_solution(inst, solution.P, solution.Q, group).ok)

    def test_unsolvable_instance(self):
        group = self.groups[0]
        basis = group.find_basis(self.rng)
        with self.assertRaises(NoSolution) as cm:
            solve_grep(GrepInstance(basis.P_gen, 2, 2), group, self.rng)
        self.assertEqual(cm.exception.extra, {'u': 4, 'r': 1})

    def test_verdict_flags(self):
        group = self.groups[0]
        basis = group.find_basis(self.rng)
        inst = GrepInstance(group.combine(1, basis.P_gen, 3, basis.P_gen), 1, 1)
        verdict = verify_solution(inst, basis.P_gen, group.mul(3, basis.P_gen), group)
        self.assertEqual((verdict.in_group, verdict.equation, verdict.independent), (True, True, False))
        self.assertFalse(verdict.ok)

    def test_simultaneous_branches(self):
        for group in self.groups:
            q, l = group.order, group.l
            for m1, n1, m2, n2 in ((1, 2, 3, 1), (l, 1, l, 1 + l), (l, 0, 0, 1)):
                basis = group.find_basis(self.rng)
                K1 = group.combine(m1, basis.P_gen, n1, basis.Q_gen)
                K2 = group.combine(m2, basis.P_gen, n2, basis.Q_gen)
                solution = solve_simultaneous(SimulInstance(K1, K2, m1, n1, m2, n2), group, self.rng)
                det = (m1 * n2 - m2 * n1) % q
                self.assertEqual(solution.branch, 'unique' if det % l else 'coset')
                self.assertEqual(group.combine(m1, solution.P, n1, solution.Q), K1)
                self.assertEqual(group.combine(m2, solution.P, n2, solution.Q), K2)
                self.assertTrue(group.is_independent(solution.P, solution.Q))

    @tag('slow')
    def test_thousand_random_instances_per_curve(self):
        for group in self.groups:
            for _ in range(1000):
                inst = self.random_instance(group)
                solution = solve_grep(inst, group, self.rng)
                self.assertTrue(verify_solution(inst, solution.P, solution.Q, group).ok, inst)
