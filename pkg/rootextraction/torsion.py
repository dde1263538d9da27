"""
The l^e-torsion subgroup E[l^e] of the supersingular curve y^2 = x^3 + x over
F_{p^2} with p = l^e * f - 1: Weil pairing, independence test and generator
search.
"""
import logging
import math
import random
from dataclasses import dataclass, field as dataclass_field

import gmpy2

from .conf import grep_settings
from .curve import CurveParams
from .exceptions import BadParams, NotInTorsion, OrderError, RetryLimitExceeded, VerificationFailed
from .field import PrimeField

logger = logging.getLogger(__name__)


class TorsionContext:
    """One instance of E[l^e] inside E(F_{p^2}) = (Z/l^e f)^2."""

    def __init__(self, curve, l, e, f):
        self.curve = curve
        self.l = int(l)
        self.e = int(e)
        self.f = int(f)
        if self.e < 1:
            raise BadParams('e must be positive.')
        if not gmpy2.is_prime(self.l):
            raise BadParams(f'l = {self.l} is not prime.')
        if curve.field.p + 1 != self.order * self.f:
            raise BadParams(f'p + 1 != l^e * f for p={curve.field.p}, l={self.l}, e={self.e}, f={self.f}.')
        if math.gcd(self.l, self.f) != 1:
            raise BadParams('Cofactor f must be prime to l.')
        if not (curve.a == 1 and curve.b == 0):
            # (p + 1)^2 is the order of y^2 = x^3 + x only
            raise BadParams(f'Only y^2 = x^3 + x is supported, got a={curve.a!r}, b={curve.b!r}.')
        if curve.order_root != self.order * self.f:
            raise BadParams('Curve order does not match l^e * f.')

    @classmethod
    def from_params(cls, p, l, e, f, a=None, b=None):
        field = PrimeField(p)
        if a is None and b is None:
            curve = CurveParams.supersingular(field)
        else:
            curve = CurveParams(field, a, b, field.p + 1)
        return cls(curve, l, e, f)

    @property
    def field(self):
        return self.curve.field

    @property
    def p(self):
        return self.curve.field.p

    @property
    def order(self):
        return self.l ** self.e

    def __eq__(self, other):
        return (
            isinstance(other, TorsionContext)
            and self.curve == other.curve
            and (self.l, self.e, self.f) == (other.l, other.e, other.f)
        )

    def __hash__(self):
        return hash((self.curve, self.l, self.e, self.f))

    def __repr__(self):
        return f'TorsionContext(p={self.p}, l={self.l}, e={self.e}, f={self.f})'

    def contains(self, pt):
        return self.curve.is_on_curve(pt) and self.curve.scalar_mul(self.order, pt).is_identity


@dataclass(frozen=True)
class TorsionBasis:
    """
    Generators (P_gen, Q_gen) of the l^e-torsion with their cached pairing.
    On the model backend the pairing is the determinant form.
    """
    P_gen: object
    Q_gen: object
    pairing: object
    attempts: int = dataclass_field(default=0, compare=False)


def _check_torsion(pt, ctx):
    if not ctx.contains(pt):
        raise NotInTorsion(f'{pt!r} is not in E[{ctx.l}^{ctx.e}].')


def _miller_step(E, T, R, X):
    """
    T + R together with the values at X of the line through T, R and of the
    vertical line through T + R. Identity operands contribute the constant 1.
    """
    one = E.field.one
    if T.is_identity or R.is_identity:
        return E._add(T, R), one, one
    if T.x == R.x and (T.y != R.y or T.y.is_zero()):
        return E._add(T, R), X.x - T.x, one
    S = E._add(T, R)
    if T.x == R.x:
        lam = (3 * T.x * T.x + E.a) / (2 * T.y)
    else:
        lam = (R.y - T.y) / (R.x - T.x)
    line = X.y - T.y - lam * (X.x - T.x)
    return S, line, X.x - S.x


def _miller(E, P, n, X):
    """
    f_{n,P}(X) as a (numerator, denominator) pair, where div f_{n,P} = n(P) - n(O)
    whenever nP = O.
    """
    num = den = E.field.one
    T = P
    for bit in bin(n)[3:]:
        T, line, vertical = _miller_step(E, T, T, X)
        num = num * num * line
        den = den * den * vertical
        if bit == '1':
            T, line, vertical = _miller_step(E, T, P, X)
            num = num * line
            den = den * vertical
    return num, den


def weil_pairing(P, Q, ctx, rng=None):
    """
    The Weil pairing e_{l^e}(P, Q), evaluated as
        [f_P(Q + S) / f_P(S)] / [f_Q(P - S) / f_Q(-S)]
    for an auxiliary point S, resampled whenever an evaluation degenerates.
    """
    _check_torsion(P, ctx)
    _check_torsion(Q, ctx)
    E, n = ctx.curve, ctx.order
    one = E.field.one
    if P.is_identity or Q.is_identity or P == Q:
        return one

    if rng is None:
        rng = random.Random(f'{P!r}|{Q!r}')
    limit = grep_settings.PAIRING_RETRY_LIMIT
    for attempt in range(1, limit + 1):
        S = E.random_point(rng)
        neg_S = E.neg(S)
        shifted_Q = E._add(Q, S)
        shifted_P = E._add(P, neg_S)
        if S.is_identity or shifted_Q.is_identity or shifted_P.is_identity:
            continue
        a_num, a_den = _miller(E, P, n, shifted_Q)
        b_num, b_den = _miller(E, P, n, S)
        c_num, c_den = _miller(E, Q, n, shifted_P)
        d_num, d_den = _miller(E, Q, n, neg_S)
        numerator = a_num * b_den * c_den * d_num
        denominator = a_den * b_num * c_num * d_den
        if numerator.is_zero() or denominator.is_zero():
            logger.debug('weil_pairing: degenerate auxiliary point on attempt %d', attempt)
            continue
        value = numerator / denominator
        if not (value ** n).is_one():
            raise VerificationFailed('Pairing value is not an l^e-th root of unity.')
        return value

    logger.warning('weil_pairing: no usable auxiliary point after %d attempts', limit)
    raise RetryLimitExceeded(f'Miller evaluation degenerated {limit} times.')


def cofactor_project(R, ctx):
    """f*R, which lies in E[l^e] because E(F_{p^2}) = (Z/l^e f)^2."""
    return ctx.curve.scalar_mul(ctx.f, R)


def is_independent(P, Q, ctx):
    """True iff the pairing has exact order l^e, i.e. <P, Q> = E[l^e]."""
    value = weil_pairing(P, Q, ctx)
    return not (value ** (ctx.order // ctx.l)).is_one()


def pairing_order_exponent(value, ctx):
    """Exponent v with the multiplicative order of a pairing value equal to l^v."""
    v = 0
    while not value.is_one():
        value = value ** ctx.l
        v += 1
        if v > ctx.e:
            raise VerificationFailed('Pairing value has order outside l^e.')
    return v


def _full_order_point(ctx, rng, limit):
    """A projected random point of order exactly l^e, and the attempts used."""
    E = ctx.curve
    almost = ctx.order // ctx.l
    for attempt in range(1, limit + 1):
        K = cofactor_project(E.random_point(rng), ctx)
        if not E.scalar_mul(almost, K).is_identity:
            return K, attempt
    logger.warning('No point of order %d after %d attempts', ctx.order, limit)
    raise RetryLimitExceeded(f'No point of order {ctx.order} found in {limit} attempts.')


def _independent_partner(K, ctx, rng, limit):
    attempts = 0
    while attempts < limit:
        candidate, used = _full_order_point(ctx, rng, limit - attempts)
        attempts += used
        if is_independent(K, candidate, ctx):
            return candidate, attempts
    logger.warning('No independent partner after %d attempts', limit)
    raise RetryLimitExceeded(f'No independent partner found in {limit} attempts.')


def find_basis(ctx, rng, retry_limit=None):
    limit = retry_limit or grep_settings.BASIS_RETRY_LIMIT
    P_gen, first = _full_order_point(ctx, rng, limit)
    Q_gen, second = _independent_partner(P_gen, ctx, rng, limit)
    basis = TorsionBasis(P_gen, Q_gen, weil_pairing(P_gen, Q_gen, ctx), attempts=first + second)

    if pairing_order_exponent(basis.pairing, ctx) != ctx.e:
        raise VerificationFailed('Found basis has a degenerate pairing.')
    logger.debug('find_basis: %d attempts for %r', basis.attempts, ctx)
    return basis


def complete_basis(K, ctx, rng, retry_limit=None):
    """A point K' of order l^e with <K, K'> = E[l^e]."""
    if ctx.curve.point_lpower_order(K, ctx.l, ctx.e) != ctx.e:
        raise OrderError(f'{K!r} does not have order {ctx.order}.')
    limit = retry_limit or grep_settings.BASIS_RETRY_LIMIT
    partner, attempts = _independent_partner(K, ctx, rng, limit)
    logger.debug('complete_basis: %d attempts', attempts)
    return partner
