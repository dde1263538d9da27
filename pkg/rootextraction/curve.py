"""
Short-Weierstrass curves y^2 = x^3 + a*x + b over F_{p^2} in affine
coordinates, with an explicit identity point.
"""
import contextvars
import logging
from contextlib import contextmanager

from .exceptions import BadParams, NotInTorsion, OffCurve

logger = logging.getLogger(__name__)

_operation_counter = contextvars.ContextVar('rootextraction_operation_counter', default=None)


class OperationCounter:
    """Number of point additions and doublings performed while active."""

    def __init__(self):
        self.count = 0


@contextmanager
def operation_counter():
    counter = OperationCounter()
    token = _operation_counter.set(counter)
    try:
        yield counter
    finally:
        _operation_counter.reset(token)


def _tick():
    counter = _operation_counter.get()
    if counter is not None:
        counter.count += 1


class Point:
    """Affine point (x, y), or the identity O when both coordinates are None."""
    __slots__ = ('x', 'y')

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValueError('Both coordinates must be given, or neither.')
        self.x = x
        self.y = y

    @property
    def is_identity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.x is None:
            return hash('identity')
        return hash((self.x.key(), self.y.key()))

    def __repr__(self):
        if self.x is None:
            return 'Point(identity)'
        return f'Point(x={self.x.key()}, y={self.y.key()})'


IDENTITY = Point()


class CurveParams:
    """
    The curve E: y^2 = x^3 + a*x + b over F_{p^2}, with #E(F_{p^2}) = order_root^2.
    """

    def __init__(self, field, a, b, order_root):
        self.field = field
        self.a = a if not isinstance(a, int) else field.fp2(a)
        self.b = b if not isinstance(b, int) else field.fp2(b)
        self.order_root = int(order_root)
        if (4 * self.a ** 3 + 27 * self.b * self.b).is_zero():
            raise BadParams('Singular curve: 4a^3 + 27b^2 = 0.')

    @classmethod
    def supersingular(cls, field):
        """y^2 = x^3 + x, supersingular for p = 3 (mod 4) with #E(F_{p^2}) = (p + 1)^2."""
        return cls(field, field.one, field.zero, field.p + 1)

    def __eq__(self, other):
        return (
            isinstance(other, CurveParams)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
            and self.order_root == other.order_root
        )

    def __hash__(self):
        return hash((self.field.p, self.a.key(), self.b.key()))

    def __repr__(self):
        return f'CurveParams(p={self.field.p}, a={self.a.key()}, b={self.b.key()})'

    @property
    def identity(self):
        return IDENTITY

    @property
    def group_order(self):
        return self.order_root * self.order_root

    def rhs(self, x):
        return x * x * x + self.a * x + self.b

    def is_on_curve(self, pt):
        if pt.is_identity:
            return True
        return pt.y * pt.y == self.rhs(pt.x)

    def point(self, x, y):
        """Build an affine point, rejecting coordinates off the curve."""
        pt = Point(x, y)
        if not self.is_on_curve(pt):
            raise OffCurve(f'{pt!r} is not on {self!r}.')
        return pt

    def neg(self, pt):
        if pt.is_identity:
            return pt
        return Point(pt.x, -pt.y)

    def add(self, P, Q):
        """Chord-tangent group law on validated inputs."""
        for pt in (P, Q):
            if not self.is_on_curve(pt):
                raise OffCurve(f'{pt!r} is not on {self!r}.')
        return self._add(P, Q)

    def sub(self, P, Q):
        return self._add(P, self.neg(Q))

    def _add(self, P, Q):
        if P.x is None:
            return Q
        if Q.x is None:
            return P
        _tick()
        if P.x == Q.x:
            if P.y != Q.y or P.y.is_zero():
                # P = -Q, including the doubling of a 2-torsion point
                return IDENTITY
            lam = (3 * P.x * P.x + self.a) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return Point(x3, y3)

    def double(self, P):
        return self._add(P, P)

    def scalar_mul(self, k, P):
        """Double-and-add over the full integer k; negative k multiplies -P."""
        k = int(k)
        if k < 0:
            k, P = -k, self.neg(P)
        result = IDENTITY
        if k == 0 or P.is_identity:
            return result
        for bit in bin(k)[2:]:
            result = self._add(result, result)
            if bit == '1':
                result = self._add(result, P)
        return result

    def point_lpower_order(self, K, l, e):
        """
        Exponent u with ord(K) = l^u, read off the sequence K, l*K, ..., l^e*K
        (e multiplications by l).
        """
        multiples = [K]
        for _ in range(e):
            multiples.append(self.scalar_mul(l, multiples[-1]))
        if not multiples[-1].is_identity:
            raise NotInTorsion(f'{K!r} is not killed by {l}^{e}.')
        for u, pt in enumerate(multiples):
            if pt.is_identity:
                return u
        return e

    def random_point(self, rng):
        """
        Uniform x until x^3 + ax + b is a square, then the canonical root with
        a random sign.
        """
        attempts = 0
        while True:
            attempts += 1
            x = self.field.random_fp2(rng)
            rhs = self.rhs(x)
            if rhs.is_square():
                y = rhs.sqrt()
                if rng.getrandbits(1):
                    y = -y
                logger.debug('random_point: %d attempt(s)', attempts)
                return Point(x, y)

    def count_points_brute_force(self):
        """#E(F_{p^2}) by scanning every x; only practical for toy primes."""
        count = 1
        for x in self.field.fp2_elements():
            rhs = self.rhs(x)
            if rhs.is_zero():
                count += 1
            elif rhs.is_square():
                count += 2
        return count
