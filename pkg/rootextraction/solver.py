"""
Generalized and simultaneous root extraction in a rank-2 l^e-torsion group.

Everything here is written against `groups.TorsionGroup`, so the same code
runs on curve torsion and on the model backend. No solver returns a solution
that has not been re-checked against its instance.
"""
import logging
import math
from dataclasses import dataclass

from .conf import grep_settings
from .exceptions import (
    BadParams,
    DegenerateSystem,
    NoGeneratingSolution,
    NoSolution,
    NotAPower,
    PreconditionViolated,
    TooLarge,
    VerificationFailed,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrepInstance:
    """Find generators P, Q with K = m*P + n*Q."""
    K: object
    m: int
    n: int


@dataclass(frozen=True)
class SimulInstance:
    """Find generators P, Q with K1 = m1*P + n1*Q and K2 = m2*P + n2*Q."""
    K1: object
    K2: object
    m1: int
    n1: int
    m2: int
    n2: int


@dataclass(frozen=True)
class GrepSolution:
    P: object
    Q: object
    case: int = None
    u: int = None
    r: int = None
    branch: str = None


@dataclass(frozen=True)
class ExistenceReport:
    solvable: bool
    u: int
    r: int


@dataclass(frozen=True)
class Verdict:
    in_group: bool
    equation: bool
    independent: bool

    @property
    def ok(self):
        return self.in_group and self.equation and self.independent


def lvaluation(value, l, e):
    """l-adic valuation of value mod l^e, with the value 0 mapped to e."""
    value %= l ** e
    if value == 0:
        return e
    r = 0
    while value % l == 0:
        value //= l
        r += 1
    return r


def existence_check(inst, group):
    """Solvable iff u + r = e, with ord(K) = l^u and l^r || gcd(m, n)."""
    q = group.order
    u = group.lpower_order(inst.K)
    r = lvaluation(math.gcd(inst.m % q, inst.n % q), group.l, group.e)
    return ExistenceReport(solvable=u + r == group.e, u=u, r=r)


def verify_solution(inst, P, Q, group):
    """Per-check verdict: membership, m*P + n*Q = K, and <P, Q> = the whole group."""
    if not all(group.contains(X) for X in (inst.K, P, Q)):
        return Verdict(in_group=False, equation=False, independent=False)
    return Verdict(
        in_group=True,
        equation=group.combine(inst.m, P, inst.n, Q) == inst.K,
        independent=group.is_independent(P, Q),
    )


def _verified(inst, P, Q, group, **meta):
    verdict = verify_solution(inst, P, Q, group)
    if not verdict.ok:
        raise VerificationFailed(f'Solution failed verification: {verdict}.')
    return GrepSolution(P, Q, **meta)


def _case1_core(K, m, n, group, rng):
    """P = K', Q = n^{-1}(K - m*K') for K' completing K to a basis; needs l not dividing n."""
    K_prime = group.complete_basis(K, rng)
    n_inv = pow(n, -1, group.order)
    return K_prime, group.mul(n_inv, group.sub(K, group.mul(m, K_prime)))


def solve_case1(inst, group, rng):
    q, l = group.order, group.l
    m, n = inst.m % q, inst.n % q
    if math.gcd(m, n) % l == 0:
        raise PreconditionViolated('Case 1 needs l not dividing gcd(m, n).')
    if group.lpower_order(inst.K) != group.e:
        raise PreconditionViolated(f'Case 1 needs ord(K) = {q}.')

    if n % l == 0:
        logger.debug('case 1: l | n, swapping the roles of m and n')
        Q, P = _case1_core(inst.K, n, m, group, rng)
    else:
        P, Q = _case1_core(inst.K, m, n, group, rng)
    return _verified(inst, P, Q, group, case=1, u=group.e, r=0)


def lr_root(K, r, basis, group):
    """
    R with l^r * R = K, from the extended logarithm (k1, k2) of K:
        R = c*K - d*((k1 / l^r) P' + (k2 / l^r) Q'),  s = 1, d = l^r - 1, c = 1.
    """
    if not 0 <= r <= group.e:
        raise BadParams(f'r must lie in [0, {group.e}], got {r}.')
    if r == 0:
        return K

    lr = group.l ** r
    coords = group.extended_dlog(K, basis)
    if coords.k1 % lr or coords.k2 % lr:
        raise NotAPower(f'K is not a {group.l}^{r}-th power (dlog {coords.k1}, {coords.k2}).')

    s, d = 1, lr - 1
    c = (s * d + 1) // lr
    correction = group.combine(
        s * (coords.k1 // lr) * d, basis.P_gen,
        s * (coords.k2 // lr) * d, basis.Q_gen,
    )
    root = group.sub(group.mul(c, K), correction)
    if group.mul(lr, root) != K:
        raise VerificationFailed('Root does not satisfy l^r * R = K.')
    return root


def solve_case2(inst, group, rng):
    q, l = group.order, group.l
    m, n = inst.m % q, inst.n % q
    if m % l or n % l:
        raise PreconditionViolated('Case 2 needs l | m and l | n.')

    report = existence_check(inst, group)
    if not report.solvable:
        raise NoSolution(u=report.u, r=report.r)
    meta = {'case': 2, 'u': report.u, 'r': report.r}

    basis = group.find_basis(rng)
    if m == 0 and n == 0:
        # K is the identity, so any basis solves the instance
        return _verified(inst, basis.P_gen, basis.Q_gen, group, **meta)

    lr = l ** report.r
    R = lr_root(inst.K, report.r, basis, group)
    reduced = solve_case1(GrepInstance(R, m // lr, n // lr), group, rng)
    return _verified(inst, reduced.P, reduced.Q, group, **meta)


def solve_grep(inst, group, rng):
    q, l = group.order, group.l
    if math.gcd(inst.m % q, inst.n % q) % l:
        report = existence_check(inst, group)
        if not report.solvable:
            raise NoSolution(u=report.u, r=report.r)
        return solve_case1(inst, group, rng)
    return solve_case2(inst, group, rng)


def _normalized(inst, l):
    """
    Reorder the system until l does not divide n2: as given, equations
    swapped, roles of P and Q swapped, both. Returns the system and whether
    the roles were swapped.
    """
    for swap_equations, transpose in ((False, False), (True, False), (False, True), (True, True)):
        K1, K2, m1, n1, m2, n2 = inst.K1, inst.K2, inst.m1, inst.n1, inst.m2, inst.n2
        if swap_equations:
            K1, K2, m1, n1, m2, n2 = K2, K1, m2, n2, m1, n1
        if transpose:
            m1, n1, m2, n2 = n1, m1, n2, m2
        if n2 % l:
            return SimulInstance(K1, K2, m1, n1, m2, n2), transpose
    raise DegenerateSystem('Every coefficient is divisible by l.')


def _satisfies(system, P, Q, group):
    return (
        group.combine(system.m1, P, system.n1, Q) == system.K1
        and group.combine(system.m2, P, system.n2, Q) == system.K2
    )


def solve_simultaneous(inst, group, rng):
    """
    P, Q generating the group with K1 = m1*P + n1*Q and K2 = m2*P + n2*Q.

    If det = m1*n2 - m2*n1 is a unit the solution is (K1, K2) M^{-1}. Otherwise
    P is an l^r-th root of s^{-1}(n2*K1 - n1*K2), det = l^r * s, and the root
    coset P + E[l^r] is searched for a generating pair.
    """
    q, l, e = group.order, group.l, group.e
    inst = SimulInstance(inst.K1, inst.K2, inst.m1 % q, inst.n1 % q, inst.m2 % q, inst.n2 % q)
    if (inst.m1 * inst.n2 - inst.m2 * inst.n1) % q == 0:
        raise DegenerateSystem('m1*n2 - m2*n1 = 0 mod l^e.')
    system, transposed = _normalized(inst, l)
    det = (system.m1 * system.n2 - system.m2 * system.n1) % q

    if det % l:
        branch = 'unique'
        r = 0
        det_inv = pow(det, -1, q)
        P = group.mul(det_inv, group.combine(system.n2, system.K1, -system.n1, system.K2))
        Q = group.mul(det_inv, group.combine(system.m1, system.K2, -system.m2, system.K1))
        if not _satisfies(system, P, Q, group):
            raise VerificationFailed('Matrix inverse does not solve the system.')
        if not group.is_independent(P, Q):
            raise NoGeneratingSolution(branch=branch)
    else:
        branch = 'coset'
        r = lvaluation(det, l, e)
        if l ** (2 * r) > grep_settings.COSET_SEARCH_LIMIT:
            raise TooLarge(f'Root coset of size {l ** (2 * r)} exceeds the coset search limit.')
        s = det // l ** r
        H = group.mul(pow(s, -1, q), group.combine(system.n2, system.K1, -system.n1, system.K2))
        basis = group.find_basis(rng)
        root = lr_root(H, r, basis, group)
        n2_inv = pow(system.n2, -1, q)
        step = l ** (e - r)
        T1, T2 = group.mul(step, basis.P_gen), group.mul(step, basis.Q_gen)
        logger.debug('simultaneous: searching a root coset of size %d', l ** (2 * r))

        for a in range(l ** r):
            for b in range(l ** r):
                P = group.add(root, group.combine(a, T1, b, T2))
                Q = group.mul(n2_inv, group.sub(system.K2, group.mul(system.m2, P)))
                if not _satisfies(system, P, Q, group):
                    raise VerificationFailed('Root coset element does not solve the system.')
                if group.is_independent(P, Q):
                    break
            else:
                continue
            break
        else:
            raise NoGeneratingSolution(branch=branch, r=r)

    if transposed:
        P, Q = Q, P
    if not _satisfies(inst, P, Q, group) or not group.is_independent(P, Q):
        raise VerificationFailed('Simultaneous solution failed verification.')
    return GrepSolution(P, Q, r=r, branch=branch)
