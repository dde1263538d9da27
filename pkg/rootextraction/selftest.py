"""
Acceptance suites behind `manage.py selftest`.

Each suite is a function taking (sizes, rng) and returning a dict of
counters; a failed check raises SuiteFailure. "quick" runs small samples of
every cheap suite, "full" runs the complete exhaustive and randomized runs
plus the complexity measurement.
"""
import functools
import logging
import math
import statistics
import time
from pathlib import Path

from .conf import grep_settings
from .curve import operation_counter
from .dlog import extended_dlog
from .exceptions import NON_EXISTENCE_ERRORS, NoGeneratingSolution, RootExtractionError
from .groups import CurveTorsionGroup
from .model import (
    ModelGroup,
    ModelTorsionGroup,
    exhaustive_existence_table,
    existence_table_csv,
    generating_pairs,
    generic_root,
)
from .params import ParamRequest, gen_params
from .solver import GrepInstance, SimulInstance, solve_grep, solve_simultaneous, verify_solution
from .torsion import cofactor_project, find_basis, pairing_order_exponent, weil_pairing

logger = logging.getLogger(__name__)

GOLDEN_FILE = 'existence_2_2.csv'

SIZES = {
    'quick': {
        'exhaustive': ((2, 2),),
        'instances': 25,
        'pairing': 10,
        'dlog': 20,
        'roots': 100,
        'simul_matrices': 48,
        'simul_curve': 10,
    },
    'full': {
        'exhaustive': ((2, 2), (2, 3), (3, 2)),
        'instances': 1000,
        'pairing': 100,
        'dlog': 200,
        'roots': 500,
        'simul_matrices': None,
        'simul_curve': 200,
    },
}

COMPLEXITY_EXPONENTS = (8, 16, 32)
COMPLEXITY_SOLVES = 25
MAX_COMPLEXITY_SLOPE = 1.3
MAX_SECONDS_PER_SOLVE = 5.0


class SuiteFailure(Exception):
    pass


def expect(condition, message):
    if not condition:
        raise SuiteFailure(message)


@functools.lru_cache(maxsize=None)
def fixture_context(l, e):
    return gen_params(ParamRequest(l=l, e=e))


def fixture_contexts():
    """The p = 47 and p = 107 curves."""
    return (fixture_context(2, 4), fixture_context(3, 3))


def random_torsion_point(ctx, rng):
    return cofactor_project(ctx.curve.random_point(rng), ctx)


def random_solvable_instance(group, rng):
    """K = m*P + n*Q for a random generating pair, so a solution exists."""
    basis = group.find_basis(rng)
    m, n = rng.randrange(group.order), rng.randrange(group.order)
    return GrepInstance(group.combine(m, basis.P_gen, n, basis.Q_gen), m, n)


def suite_point_counts(sizes, rng):
    counts = {}
    for ctx in fixture_contexts():
        count = ctx.curve.count_points_brute_force()
        expect(count == (ctx.p + 1) ** 2, f'#E(F_{ctx.p}^2) = {count}, expected {(ctx.p + 1) ** 2}.')
        counts[str(ctx.p)] = count
    return counts


def suite_pairing(sizes, rng):
    checked = 0
    for ctx in fixture_contexts():
        basis = find_basis(ctx, rng)
        expect(pairing_order_exponent(basis.pairing, ctx) == ctx.e, f'Degenerate basis pairing on p={ctx.p}.')
        E = ctx.curve
        for _ in range(sizes['pairing']):
            a, b = rng.randrange(1, ctx.order), rng.randrange(1, ctx.order)
            lhs = weil_pairing(E.scalar_mul(a, basis.P_gen), E.scalar_mul(b, basis.Q_gen), ctx)
            expect(lhs == basis.pairing ** (a * b), f'Bilinearity fails for a={a}, b={b} on p={ctx.p}.')
            R = random_torsion_point(ctx, rng)
            expect(weil_pairing(R, R, ctx).is_one(), f'e(R, R) != 1 for {R!r}.')
            checked += 1
    return {'checked': checked}


def suite_dlog(sizes, rng):
    checked = 0
    for ctx in fixture_contexts():
        basis = find_basis(ctx, rng)
        for _ in range(sizes['dlog']):
            k1, k2 = rng.randrange(ctx.order), rng.randrange(ctx.order)
            K = ctx.curve.add(ctx.curve.scalar_mul(k1, basis.P_gen), ctx.curve.scalar_mul(k2, basis.Q_gen))
            coords = extended_dlog(K, basis, ctx)
            expect((coords.k1, coords.k2) == (k1, k2), f'Recovered {coords} for ({k1}, {k2}) on p={ctx.p}.')
            checked += 1
    return {'checked': checked}


def suite_generic_root(sizes, rng):
    cyclic = ModelGroup([12])
    x = generic_root(cyclic.element(4), 2, 2, cyclic)
    expect(x.coords[0] in (1, 4, 7, 10), f'Root of 4 in Z/12 came out as {x!r}.')

    G = ModelGroup([48, 48])
    for _ in range(sizes['roots']):
        r = rng.randint(1, 3)
        h = G.scalar_mul(2 ** r, G.element(rng.randrange(48), rng.randrange(48)))
        root = generic_root(h, 2, r, G)
        expect(G.scalar_mul(2 ** r, root) == h, f'2^{r} * {root!r} != {h!r}.')
    return {'checked': sizes['roots'] + 1}


def suite_existence(sizes, rng):
    """solve_grep on the model backend succeeds exactly on the brute-force solvable inputs."""
    counts = {}
    for l, e in sizes['exhaustive']:
        group = ModelTorsionGroup(l, e)
        rows = exhaustive_existence_table(l, e)
        for row in rows:
            expect(
                row.solvable == (row.u + row.r == e),
                f'Existence criterion disagrees with brute force at {row}.',
            )
            inst = GrepInstance(group.element(row.k0, row.k1), row.m, row.n)
            try:
                solution = solve_grep(inst, group, rng)
            except NON_EXISTENCE_ERRORS:
                solved = False
            else:
                solved = verify_solution(inst, solution.P, solution.Q, group).ok
            expect(solved == row.solvable, f'solve_grep disagrees with brute force at {row}.')
        counts[f'{l}^{e}'] = len(rows)
    return counts


def suite_generating_combinations(sizes, rng):
    """m*P + n*Q has full order for every generating pair when l does not divide gcd(m, n)."""
    l, e = 2, 3
    group = ModelTorsionGroup(l, e)
    q = group.order
    checked = 0
    coefficients = [(m, n) for m in range(q) for n in range(q) if math.gcd(m, n) % l]
    for P, Q in generating_pairs(l, e):
        P, Q = group.element(*P), group.element(*Q)
        for m, n in coefficients:
            expect(group.lpower_order(group.combine(m, P, n, Q)) == e, f'ord({m}P + {n}Q) < {q}.')
            checked += 1
    return {'checked': checked}


def _congruence_oracle(inst, q):
    """Solve the system coordinate by coordinate over Z/q by exhaustive search."""
    P, Q = [], []
    for j in range(2):
        k1, k2 = inst.K1.coords[j], inst.K2.coords[j]
        matches = [
            (a, b) for a in range(q) for b in range(q)
            if (inst.m1 * a + inst.n1 * b - k1) % q == 0 and (inst.m2 * a + inst.n2 * b - k2) % q == 0
        ]
        expect(len(matches) == 1, f'Unit determinant system has {len(matches)} solutions.')
        P.append(matches[0][0])
        Q.append(matches[0][1])
    return tuple(P), tuple(Q)


def _model_simul_unique(sizes, rng):
    l, e = 2, 3
    group = ModelTorsionGroup(l, e)
    q = group.order
    matrices = [
        (m1, n1, m2, n2)
        for m1 in range(q) for n1 in range(q) for m2 in range(q) for n2 in range(q)
        if (m1 * n2 - m2 * n1) % l
    ]
    if sizes['simul_matrices'] is not None:
        matrices = rng.sample(matrices, sizes['simul_matrices'])

    for m1, n1, m2, n2 in matrices:
        K1 = group.element(rng.randrange(q), rng.randrange(q))
        K2 = group.element(rng.randrange(q), rng.randrange(q))
        inst = SimulInstance(K1, K2, m1, n1, m2, n2)
        P, Q = _congruence_oracle(inst, q)
        generating = (P[0] * Q[1] - P[1] * Q[0]) % l != 0
        try:
            solution = solve_simultaneous(inst, group, rng)
        except NoGeneratingSolution:
            expect(not generating, f'Solver missed the generating solution of {inst}.')
            continue
        expect(generating, f'Solver returned a dependent pair for {inst}.')
        expect(
            (solution.P.coords, solution.Q.coords) == (P, Q) and solution.branch == 'unique',
            f'Solver disagrees with the congruence oracle on {inst}.',
        )
    return len(matrices)


def _model_simul_coset(rng, samples):
    """Coset branch outcomes against a brute-force search for generating solutions."""
    l, e = 2, 3
    group = ModelTorsionGroup(l, e)
    q = group.order
    pairs = list(generating_pairs(l, e))
    checked = 0
    while checked < samples:
        m1, n1, m2, n2 = (rng.randrange(q) for _ in range(4))
        det = (m1 * n2 - m2 * n1) % q
        if det == 0 or det % l or all(c % l == 0 for c in (m1, n1, m2, n2)):
            continue
        K1 = group.element(rng.randrange(q), rng.randrange(q))
        K2 = group.element(rng.randrange(q), rng.randrange(q))
        exists = any(
            ((m1 * P[0] + n1 * Q[0]) % q, (m1 * P[1] + n1 * Q[1]) % q) == K1.coords
            and ((m2 * P[0] + n2 * Q[0]) % q, (m2 * P[1] + n2 * Q[1]) % q) == K2.coords
            for P, Q in pairs
        )
        inst = SimulInstance(K1, K2, m1, n1, m2, n2)
        try:
            solve_simultaneous(inst, group, rng)
            solved = True
        except NON_EXISTENCE_ERRORS:
            solved = False
        expect(solved == exists, f'Coset branch outcome {solved} != brute force {exists} for {inst}.')
        checked += 1
    return checked


def _curve_simul(ctx, rng, samples):
    group = CurveTorsionGroup(ctx)
    q, l = ctx.order, ctx.l
    counts = {'unique': 0, 'coset': 0}
    for i in range(samples):
        want_coset = i % 2 == 1
        while True:
            m1, n1, m2, n2 = (rng.randrange(q) for _ in range(4))
            det = (m1 * n2 - m2 * n1) % q
            if det == 0 or all(c % l == 0 for c in (m1, n1, m2, n2)):
                continue
            if want_coset and det % l == 0 and det % l ** 3:
                break
            if not want_coset and det % l:
                break
        basis = find_basis(ctx, rng)
        K1 = group.combine(m1, basis.P_gen, n1, basis.Q_gen)
        K2 = group.combine(m2, basis.P_gen, n2, basis.Q_gen)
        inst = SimulInstance(K1, K2, m1, n1, m2, n2)
        solution = solve_simultaneous(inst, group, rng)
        expect(
            group.combine(m1, solution.P, n1, solution.Q) == K1
            and group.combine(m2, solution.P, n2, solution.Q) == K2
            and group.is_independent(solution.P, solution.Q),
            f'Simultaneous solution failed verification on p={ctx.p}.',
        )
        counts[solution.branch] += 1
    return counts


def suite_simultaneous(sizes, rng):
    report = {
        'model_unique': _model_simul_unique(sizes, rng),
        'model_coset': _model_simul_coset(rng, sizes['simul_curve']),
    }
    for ctx in fixture_contexts():
        report[str(ctx.p)] = _curve_simul(ctx, rng, sizes['simul_curve'])
    return report


def suite_curve_solve(sizes, rng):
    counts = {}
    for ctx in fixture_contexts():
        group = CurveTorsionGroup(ctx)
        for _ in range(sizes['instances']):
            inst = random_solvable_instance(group, rng)
            solution = solve_grep(inst, group, rng)
            verdict = verify_solution(inst, solution.P, solution.Q, group)
            expect(verdict.ok, f'Solution for {inst} rejected on p={ctx.p}: {verdict}.')
        counts[str(ctx.p)] = sizes['instances']
    return counts


class SearchExcludedGroup(CurveTorsionGroup):
    """Curve torsion whose randomized basis and partner searches are left out of the operation count."""

    def find_basis(self, rng):
        with operation_counter():
            return super().find_basis(rng)

    def complete_basis(self, K, rng):
        with operation_counter():
            return super().complete_basis(K, rng)


def measure_operations(e, rng, solves=COMPLEXITY_SOLVES):
    """(median group operations, slowest wall-clock seconds) of solve_grep at l = 2."""
    ctx = gen_params(ParamRequest(l=2, e=e))
    group = SearchExcludedGroup(ctx)
    instances = [random_solvable_instance(group, rng) for _ in range(solves)]
    operations, slowest = [], 0.0
    for inst in instances:
        started = time.perf_counter()
        with operation_counter() as counter:
            solve_grep(inst, group, rng)
        slowest = max(slowest, time.perf_counter() - started)
        operations.append(counter.count)
    return statistics.median(operations), slowest


def complexity_slope(points):
    """Least-squares slope of log(operations) against log(e)."""
    xs = [math.log(e) for e, _ in points]
    ys = [math.log(ops) for _, ops in points]
    return statistics.linear_regression(xs, ys).slope


def suite_complexity(sizes, rng):
    points, timings = [], {}
    for e in COMPLEXITY_EXPONENTS:
        operations, slowest = measure_operations(e, rng)
        points.append((e, operations))
        timings[str(e)] = round(slowest, 3)
    slope = complexity_slope(points)
    expect(slope <= MAX_COMPLEXITY_SLOPE, f'Operation count grows like e^{slope:.2f}.')
    expect(
        timings[str(COMPLEXITY_EXPONENTS[-1])] < MAX_SECONDS_PER_SOLVE,
        f'Slowest solve at e={COMPLEXITY_EXPONENTS[-1]} took {timings[str(COMPLEXITY_EXPONENTS[-1])]} s.',
    )
    return {'slope': round(slope, 3), 'operations': {str(e): ops for e, ops in points}, 'seconds': timings}


def golden_path(golden=None):
    return Path(golden) if golden else Path(grep_settings.GOLDEN_DIR) / GOLDEN_FILE


def diff_location(expected, actual):
    """(line number, expected line, actual line) of the first difference, or None."""
    expected_lines = expected.split('\n')
    actual_lines = actual.split('\n')
    for number, (want, got) in enumerate(zip(expected_lines, actual_lines), start=1):
        if want != got:
            return number, want, got
    if len(expected_lines) != len(actual_lines):
        number = min(len(expected_lines), len(actual_lines)) + 1
        want = expected_lines[number - 1] if number <= len(expected_lines) else None
        got = actual_lines[number - 1] if number <= len(actual_lines) else None
        return number, want, got
    return None


def suite_golden(sizes, rng):
    path = golden_path(sizes.get('golden'))
    expected = path.read_text(encoding='utf-8')
    location = diff_location(expected, existence_table_csv(exhaustive_existence_table(2, 2)))
    if location is not None:
        number, want, got = location
        raise SuiteFailure(f'{path}:{number}: expected {want!r}, got {got!r}.')
    return {'file': str(path), 'lines': expected.count('\n')}


SUITES = (
    ('point_counts', suite_point_counts, ('quick', 'full')),
    ('pairing', suite_pairing, ('quick', 'full')),
    ('dlog', suite_dlog, ('quick', 'full')),
    ('generic_root', suite_generic_root, ('quick', 'full')),
    ('existence', suite_existence, ('quick', 'full')),
    ('generating_combinations', suite_generating_combinations, ('full',)),
    ('curve_solve', suite_curve_solve, ('quick', 'full')),
    ('simultaneous', suite_simultaneous, ('quick', 'full')),
    ('complexity', suite_complexity, ('full',)),
    ('golden', suite_golden, ('quick', 'full')),
)


def run_selftest(level, rng, golden=None):
    """Run every suite of the level; the report lists each suite's outcome."""
    if level not in SIZES:
        raise ValueError(f'Unknown selftest level {level!r}.')
    sizes = {**SIZES[level], 'golden': golden}
    started = time.perf_counter()
    results = []

    for name, suite, levels in SUITES:
        if level not in levels:
            continue
        suite_started = time.perf_counter()
        result = {'name': name, 'passed': True}
        try:
            result['detail'] = suite(sizes, rng)
        except SuiteFailure as exc:
            result.update(passed=False, error=str(exc))
        except (RootExtractionError, OSError) as exc:
            result.update(passed=False, error=f'{type(exc).__name__}: {exc}')
        result['seconds'] = round(time.perf_counter() - suite_started, 3)
        logger.info('selftest %s: %s in %.3f s', name, 'ok' if result['passed'] else 'FAILED', result['seconds'])
        results.append(result)

    seconds = round(time.perf_counter() - started, 3)
    passed = all(result['passed'] for result in results)
    report = {
        'status': 'ok' if passed else 'failed',
        'level': level,
        'passed': passed,
        'seconds': seconds,
        'suites': results,
    }
    if level == 'quick':
        report['within_budget'] = seconds <= grep_settings.QUICK_SELFTEST_SECONDS
    return report
