"""
Discrete logarithms in l-power order groups.

The cyclic case is Pohlig-Hellman over the digits base l, each digit found by
baby-step giant-step in the order-l subgroup. The two-dimensional extended
logarithm in E[l^e] is reduced to two cyclic logarithms in the roots of unity
via the Weil pairing.
"""
import math
from dataclasses import dataclass

from .exceptions import BadParams, NotInSubgroup, VerificationFailed
from .torsion import weil_pairing


@dataclass(frozen=True)
class ExtendedDlog:
    """Coordinates (k1, k2) of a point in a basis (P', Q'), reduced mod l^e."""
    k1: int
    k2: int


def _bsgs_digit(target, l, baby_steps, giant):
    """d in [0, l) with gamma^d = target, or None."""
    y = target
    width = len(baby_steps)
    for k in range(width):
        j = baby_steps.get(y)
        if j is not None:
            return (k * width + j) % l
        y = y * giant
    return None


def dlog_prime_power(h, g, l, e):
    """
    x in [0, l^e) with g^x = h, for g of multiplicative order exactly l^e.
    """
    order = l ** e
    gamma = g ** (order // l)
    if gamma.is_one():
        raise BadParams(f'Base does not have order {l}^{e}.')

    width = math.isqrt(l - 1) + 1
    baby_steps = {}
    step = g.field.one
    for j in range(width):
        baby_steps.setdefault(step, j)
        step = step * gamma
    giant = (gamma ** width).inv()

    g_inv = g.inv()
    x = 0
    for i in range(e):
        residual = (h * g_inv ** x) ** (l ** (e - 1 - i))
        digit = _bsgs_digit(residual, l, baby_steps, giant)
        if digit is None:
            raise NotInSubgroup(f'No digit at level {i}: h is not a power of g.')
        x += digit * l ** i

    if g ** x != h:
        raise NotInSubgroup('h is not in the subgroup generated by g.')
    return x


def extended_dlog(K, basis, ctx):
    """
    (k1, k2) with K = k1*P' + k2*Q', from
        e(P', K) = g^{k2},  e(K, Q') = g^{k1},  g = e(P', Q').
    """
    P_gen, Q_gen, g = basis.P_gen, basis.Q_gen, basis.pairing
    if K.is_identity:
        return ExtendedDlog(0, 0)

    k2 = dlog_prime_power(weil_pairing(P_gen, K, ctx), g, ctx.l, ctx.e)
    k1 = dlog_prime_power(weil_pairing(K, Q_gen, ctx), g, ctx.l, ctx.e)

    E = ctx.curve
    if E._add(E.scalar_mul(k1, P_gen), E.scalar_mul(k2, Q_gen)) != K:
        raise VerificationFailed(f'Extended dlog ({k1}, {k2}) does not reconstruct {K!r}.')
    return ExtendedDlog(k1, k2)
