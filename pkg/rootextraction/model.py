"""
Abstract-group backend and brute-force oracles.

Groups are products of cyclic groups Z/n_1 x ... x Z/n_N with the standard
basis vectors as generators, so an extended discrete logarithm is a
coordinate read and every oracle here is correct by inspection.
"""
import csv
import io
import itertools
import logging
import math
from dataclasses import dataclass

import gmpy2

from .conf import grep_settings
from .dlog import ExtendedDlog
from .exceptions import (
    BadParams,
    NoSolution,
    NotAPower,
    OrderError,
    RetryLimitExceeded,
    TooLarge,
    VerificationFailed,
)
from .groups import TorsionGroup
from .solver import GrepInstance, existence_check, lvaluation
from .torsion import TorsionBasis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelElement:
    coords: tuple

    def __repr__(self):
        return f'ModelElement{self.coords}'


class ModelGroup:
    """The product of cyclic groups Z/n_i for the given orders."""

    def __init__(self, orders):
        orders = tuple(int(n) for n in orders)
        if not orders or any(n < 2 for n in orders):
            raise BadParams('Every cyclic factor needs order >= 2.')
        self.orders = orders

    @classmethod
    def torsion(cls, l, e, rank=2):
        """(Z/l^e)^rank."""
        return cls([l ** e] * rank)

    def __repr__(self):
        return 'ModelGroup(' + ' x '.join(f'Z/{n}' for n in self.orders) + ')'

    @property
    def rank(self):
        return len(self.orders)

    @property
    def size(self):
        return math.prod(self.orders)

    def ell_part(self, l):
        """(t, s) with |G| = l^t * s and gcd(l, s) = 1."""
        s, t = self.size, 0
        while s % l == 0:
            s //= l
            t += 1
        return t, s

    def element(self, *coords):
        if len(coords) != self.rank:
            raise BadParams(f'Expected {self.rank} coordinates, got {len(coords)}.')
        return ModelElement(tuple(c % n for c, n in zip(coords, self.orders)))

    @property
    def identity(self):
        return ModelElement((0,) * self.rank)

    def generator(self, i):
        return ModelElement(tuple(1 if j == i else 0 for j in range(self.rank)))

    def elements(self):
        for coords in itertools.product(*(range(n) for n in self.orders)):
            yield ModelElement(coords)

    def _check(self, *xs):
        for x in xs:
            if len(x.coords) != self.rank:
                raise BadParams(f'{x!r} does not belong to {self!r}.')

    def add(self, x, y):
        self._check(x, y)
        return ModelElement(tuple((a + b) % n for a, b, n in zip(x.coords, y.coords, self.orders)))

    def neg(self, x):
        self._check(x)
        return ModelElement(tuple(-a % n for a, n in zip(x.coords, self.orders)))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar_mul(self, k, x):
        self._check(x)
        return ModelElement(tuple(k * a % n for a, n in zip(x.coords, self.orders)))

    def order(self, x):
        """lcm of the componentwise orders n_i / gcd(n_i, c_i)."""
        self._check(x)
        return math.lcm(*(n // math.gcd(n, c) for c, n in zip(x.coords, self.orders)))


def _lpower_exponent(order, l):
    u = 0
    while order % l == 0:
        order //= l
        u += 1
    if order != 1:
        raise BadParams(f'Order is not a power of {l}.')
    return u


def generic_root(h, l, r, G):
    """
    An l^r-th root x of h (l^r * x = h) by the exponent formula
        x = ((s*d + 1) / l^r) * h - sum_i s * (k_i / l^r) * d * g_i,
    where |G| = l^t * s, d = -s^{-1} mod l^r and h = sum_i k_i * g_i.
    """
    if not gmpy2.is_prime(l) or r < 0:
        raise BadParams(f'Need a prime l and r >= 0, got l={l}, r={r}.')
    if r == 0:
        return h

    _, s = G.ell_part(l)
    if math.gcd(l, s) != 1:
        raise BadParams('gcd(l, s) != 1.')
    lr = l ** r
    d = -pow(s, -1, lr) % lr
    if (s * d + 1) % lr != 0:
        raise VerificationFailed('s*d + 1 is not divisible by l^r.')
    c = (s * d + 1) // lr

    # Exponent vector with every k_i a multiple of l^r
    exponents = []
    for coord, n in zip(h.coords, G.orders):
        g = math.gcd(lr, n)
        if coord % g:
            raise NotAPower(f'{h!r} is not a {l}^{r}-th power in {G!r}.')
        modulus = n // g
        exponents.append(lr * ((coord // g) * pow(lr // g, -1, modulus) % modulus))

    x = G.scalar_mul(c, h)
    for i, k in enumerate(exponents):
        x = G.sub(x, G.scalar_mul(s * (k // lr) * d, G.generator(i)))

    if G.scalar_mul(lr, x) != h:
        raise VerificationFailed(f'Root formula failed for {h!r}.')
    return x


def det2(P, Q, modulus):
    """det(P|Q) mod modulus for rank-2 model elements."""
    return (P.coords[0] * Q.coords[1] - P.coords[1] * Q.coords[0]) % modulus


class ModelTorsionGroup(TorsionGroup):
    """
    (Z/l^e)^2 as a rank-2 torsion group. The determinant det(P|Q) mod l^e
    plays the role of the Weil pairing.
    """

    def __init__(self, l, e):
        self.l = int(l)
        self.e = int(e)
        self.group = ModelGroup.torsion(self.l, self.e)

    def __repr__(self):
        return f'ModelTorsionGroup(l={self.l}, e={self.e})'

    @property
    def identity(self):
        return self.group.identity

    def element(self, c0, c1):
        return self.group.element(c0, c1)

    def add(self, X, Y):
        return self.group.add(X, Y)

    def neg(self, X):
        return self.group.neg(X)

    def mul(self, k, X):
        return self.group.scalar_mul(k, X)

    def contains(self, X):
        return isinstance(X, ModelElement) and len(X.coords) == 2 and all(
            0 <= c < self.order for c in X.coords
        )

    def lpower_order(self, X):
        return _lpower_exponent(self.group.order(X), self.l)

    def pairing(self, P, Q):
        return det2(P, Q, self.order)

    def is_independent(self, P, Q):
        return self.pairing(P, Q) % self.l != 0

    def _random_full_order(self, rng, limit):
        for _ in range(limit):
            X = self.element(rng.randrange(self.order), rng.randrange(self.order))
            if self.lpower_order(X) == self.e:
                return X
        raise RetryLimitExceeded(f'No element of order {self.order} in {limit} attempts.')

    def _random_partner(self, K, rng, limit):
        for _ in range(limit):
            candidate = self._random_full_order(rng, limit)
            if self.is_independent(K, candidate):
                return candidate
        raise RetryLimitExceeded(f'No independent partner in {limit} attempts.')

    def find_basis(self, rng):
        limit = grep_settings.BASIS_RETRY_LIMIT
        P_gen = self._random_full_order(rng, limit)
        Q_gen = self._random_partner(P_gen, rng, limit)
        return TorsionBasis(P_gen, Q_gen, self.pairing(P_gen, Q_gen))

    def complete_basis(self, K, rng):
        if self.lpower_order(K) != self.e:
            raise OrderError(f'{K!r} does not have order {self.order}.')
        return self._random_partner(K, rng, grep_settings.BASIS_RETRY_LIMIT)

    def extended_dlog(self, K, basis):
        q = self.order
        g_inv = pow(basis.pairing, -1, q)
        k2 = self.pairing(basis.P_gen, K) * g_inv % q
        k1 = self.pairing(K, basis.Q_gen) * g_inv % q
        if self.combine(k1, basis.P_gen, k2, basis.Q_gen) != K:
            raise VerificationFailed(f'Extended dlog ({k1}, {k2}) does not reconstruct {K!r}.')
        return ExtendedDlog(k1, k2)


def generating_pairs(l, e):
    """Every ordered pair (P, Q) of (Z/l^e)^2 with det(P|Q) a unit, in scan order."""
    q = l ** e
    vectors = [(a, b) for a in range(q) for b in range(q)]
    for P in vectors:
        for Q in vectors:
            if (P[0] * Q[1] - P[1] * Q[0]) % l:
                yield P, Q


def brute_force_grep(K, m, n, l, e):
    """
    First generating pair (P, Q) of (Z/l^e)^2 with m*P + n*Q = K, or None.
    """
    q = l ** e
    if q > grep_settings.BRUTE_FORCE_LIMIT:
        raise TooLarge(f'l^e = {q} exceeds the brute-force limit.')
    target = tuple(c % q for c in K.coords)
    for P, Q in generating_pairs(l, e):
        if ((m * P[0] + n * Q[0]) % q, (m * P[1] + n * Q[1]) % q) == target:
            return ModelElement(P), ModelElement(Q)
    return None


@dataclass(frozen=True)
class ExistenceRow:
    m: int
    n: int
    k0: int
    k1: int
    u: int
    r: int
    solvable: bool


EXISTENCE_COLUMNS = ('m', 'n', 'k0', 'k1', 'u', 'r', 'solvable')


def exhaustive_existence_table(l, e):
    """
    Solvability of every (m, n, K) over (Z/l^e)^2, decided by brute force,
    together with the (u, r) of the existence criterion. Rows are ordered by
    (m, n, k0, k1).
    """
    q = l ** e
    if q > grep_settings.EXISTENCE_TABLE_LIMIT:
        raise TooLarge(f'l^e = {q} exceeds the existence table limit.')
    group = ModelTorsionGroup(l, e)
    pairs = list(generating_pairs(l, e))

    rows = []
    for m in range(q):
        for n in range(q):
            # Brute force: every K reachable as m*P + n*Q from a generating pair
            reachable = {
                ((m * P[0] + n * Q[0]) % q, (m * P[1] + n * Q[1]) % q) for P, Q in pairs
            }
            for k0 in range(q):
                for k1 in range(q):
                    report = existence_check(GrepInstance(group.element(k0, k1), m, n), group)
                    rows.append(ExistenceRow(m, n, k0, k1, report.u, report.r, (k0, k1) in reachable))
    logger.info('Existence table (%d, %d): %d rows', l, e, len(rows))
    return rows


def existence_table_csv(rows):
    """CSV text with LF line endings and 0/1 flags, identical on every platform."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(EXISTENCE_COLUMNS)
    for row in rows:
        writer.writerow([row.m, row.n, row.k0, row.k1, row.u, row.r, int(row.solvable)])
    return buffer.getvalue()


def _full_rank_mod_l(vectors, l):
    """Gaussian elimination over F_l."""
    rows = [[c % l for c in v] for v in vectors]
    size = len(rows)
    for col in range(size):
        pivot = next((i for i in range(col, size) if rows[i][col]), None)
        if pivot is None:
            return False
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = pow(rows[col][col], -1, l)
        for i in range(size):
            if i != col and rows[i][col]:
                factor = rows[i][col] * inv % l
                rows[i] = [(a - factor * b) % l for a, b in zip(rows[i], rows[col])]
    return True


def _random_completion(R, G, l, rng, limit):
    """N - 1 elements that together with R generate G = (Z/l^e)^N."""
    for _ in range(limit):
        others = [
            G.element(*(rng.randrange(n) for n in G.orders)) for _ in range(G.rank - 1)
        ]
        if _full_rank_mod_l([R.coords] + [x.coords for x in others], l):
            return others
    raise RetryLimitExceeded(f'No basis completion found in {limit} attempts.')


def solve_grep_rank_n(K, coefficients, l, e, rng):
    """
    Generators P_1..P_N of (Z/l^e)^N with sum_i m_i * P_i = K, N = len(coefficients).
    Solvable iff u + r = e, with ord(K) = l^u and r the l-adic valuation of
    gcd(m_1, ..., m_N) (r = e when every m_i is 0).
    """
    G = ModelGroup.torsion(l, e, rank=len(coefficients))
    q = l ** e
    limit = grep_settings.BASIS_RETRY_LIMIT
    coefficients = [int(m) % q for m in coefficients]
    if len(K.coords) != G.rank:
        raise BadParams('K and the coefficient list disagree on the rank.')

    u = _lpower_exponent(G.order(K), l)
    r = lvaluation(math.gcd(*coefficients), l, e)
    if u + r != e:
        raise NoSolution(u=u, r=r)

    if r == e:
        # K is the identity; any basis works
        first = G.generator(0)
        return (first, *_random_completion(first, G, l, rng, limit))

    R = generic_root(K, l, r, G)
    reduced = [m // l ** r for m in coefficients]
    j = next(i for i, m in enumerate(reduced) if m % l)

    others = iter(_random_completion(R, G, l, rng, limit))
    solution = [None] * G.rank
    rest = R
    for i, m in enumerate(reduced):
        if i != j:
            solution[i] = next(others)
            rest = G.sub(rest, G.scalar_mul(m, solution[i]))
    solution[j] = G.scalar_mul(pow(reduced[j], -1, q), rest)

    total = G.identity
    for m, P in zip(coefficients, solution):
        total = G.add(total, G.scalar_mul(m, P))
    if total != K or not _full_rank_mod_l([P.coords for P in solution], l):
        raise VerificationFailed('Rank-N solution failed verification.')
    return tuple(solution)
