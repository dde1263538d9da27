"""
Arithmetic in F_p and in its quadratic extension F_{p^2} = F_p(i), i^2 = -1.

Only primes p = 3 (mod 4) are accepted, which makes -1 a non-residue and the
tower F_p(i) canonical. All values are immutable and always fully reduced.
"""
import gmpy2

from .conf import grep_settings
from .exceptions import BadParams, DivisionByZero, FieldMismatch, NotASquare


class PrimeField:
    """
    The prime field F_p, also acting as a factory for F_p and F_{p^2} elements.
    """
    __slots__ = ('p',)

    def __init__(self, p, rounds=None):
        p = int(p)
        if p < 3 or p % 4 != 3:
            raise BadParams(f'Modulus must be a prime p = 3 (mod 4), got {p}.')
        rounds = rounds or grep_settings.PRIMALITY_ROUNDS
        if not gmpy2.is_prime(p, rounds):
            raise BadParams(f'Modulus {p} is not prime.')
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(('PrimeField', self.p))

    def __repr__(self):
        return f'PrimeField({self.p})'

    def __call__(self, value):
        return FpElement(self, value)

    def fp2(self, c0, c1=0):
        return Fp2Element(self, c0, c1)

    @property
    def zero(self):
        return Fp2Element(self, 0, 0)

    @property
    def one(self):
        return Fp2Element(self, 1, 0)

    @property
    def i(self):
        return Fp2Element(self, 0, 1)

    def random_fp2(self, rng):
        return Fp2Element(self, rng.randrange(self.p), rng.randrange(self.p))

    def fp2_elements(self):
        """Every element of F_{p^2}, ordered by (c0, c1)."""
        for c0 in range(self.p):
            for c1 in range(self.p):
                yield Fp2Element(self, c0, c1)

    def invert(self, value):
        """Inverse of an integer residue mod p (extended Euclid)."""
        value %= self.p
        if value == 0:
            raise DivisionByZero()
        return int(gmpy2.invert(value, self.p))


class FpElement:
    """Residue in [0, p)."""
    __slots__ = ('field', 'value')

    def __init__(self, field, value):
        self.field = field
        self.value = int(value) % field.p

    def _coerce(self, other):
        if isinstance(other, int):
            return other
        if isinstance(other, FpElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch()
            return other.value
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.field, self.value * self.field.invert(o))

    def __neg__(self):
        return FpElement(self.field, -self.value)

    def __pow__(self, k):
        if k < 0:
            return FpElement(self.field, pow(self.field.invert(self.value), -k, self.field.p))
        return FpElement(self.field, pow(self.value, k, self.field.p))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.field.p
        return isinstance(other, FpElement) and self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self):
        return f'FpElement({self.value} mod {self.field.p})'

    def inv(self):
        return FpElement(self.field, self.field.invert(self.value))

    def is_square(self):
        """Euler's criterion; zero counts as a square."""
        if self.value == 0:
            return True
        return pow(self.value, (self.field.p - 1) // 2, self.field.p) == 1

    def sqrt(self):
        """The root a^{(p+1)/4}, valid because p = 3 (mod 4)."""
        if not self.is_square():
            raise NotASquare(f'{self.value} is not a square mod {self.field.p}.')
        root = FpElement(self.field, pow(self.value, (self.field.p + 1) // 4, self.field.p))
        other = -root
        return root if root.value <= other.value else other


class Fp2Element:
    """
    The element c0 + c1*i of F_{p^2}; c0 and c1 are residues mod p.
    """
    __slots__ = ('field', 'c0', 'c1')

    def __init__(self, field, c0, c1=0):
        p = field.p
        self.field = field
        self.c0 = int(c0) % p
        self.c1 = int(c1) % p

    def _coerce(self, other):
        if isinstance(other, Fp2Element):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch()
            return other.c0, other.c1
        if isinstance(other, FpElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch()
            return other.value, 0
        if isinstance(other, int):
            return other, 0
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2Element(self.field, self.c0 + o[0], self.c1 + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2Element(self.field, self.c0 - o[0], self.c1 - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2Element(self.field, o[0] - self.c0, o[1] - self.c1)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        b0, b1 = o
        # i^2 = -1
        return Fp2Element(
            self.field,
            self.c0 * b0 - self.c1 * b1,
            self.c0 * b1 + self.c1 * b0,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Fp2Element(self.field, o[0], o[1]).inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2Element(self.field, o[0], o[1]) * self.inv()

    def __neg__(self):
        return Fp2Element(self.field, -self.c0, -self.c1)

    def __pow__(self, k):
        k = int(k)
        base = self
        if k < 0:
            base, k = self.inv(), -k
        result = Fp2Element(self.field, 1, 0)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c1 == 0 and self.c0 == other % self.field.p
        if not isinstance(other, Fp2Element):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1 and self.field == other.field

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __repr__(self):
        return f'Fp2Element({self.c0} + {self.c1}*i mod {self.field.p})'

    def is_zero(self):
        return self.c0 == 0 and self.c1 == 0

    def is_one(self):
        return self.c0 == 1 and self.c1 == 0

    def key(self):
        """Integer pair used for canonical ordering."""
        return self.c0, self.c1

    def conjugate(self):
        return Fp2Element(self.field, self.c0, -self.c1)

    def frobenius(self):
        """a^p, which equals the conjugate since p = 3 (mod 4)."""
        return self.conjugate()

    def norm(self):
        return FpElement(self.field, self.c0 * self.c0 + self.c1 * self.c1)

    def inv(self):
        """conj(a) / N(a); the norm is inverted in F_p."""
        if self.is_zero():
            raise DivisionByZero('Cannot invert zero in F_p^2.')
        n_inv = self.field.invert(self.c0 * self.c0 + self.c1 * self.c1)
        return Fp2Element(self.field, self.c0 * n_inv, -self.c1 * n_inv)

    def is_square(self):
        """
        Quadratic character. a^{(p^2-1)/2} = N(a)^{(p-1)/2}, so the test is
        done on the norm in F_p.
        """
        return self.norm().is_square()

    def sqrt(self):
        """
        Square root with the canonical choice: of the two roots, the one whose
        (c0, c1) pair is lexicographically smaller.
        """
        field = self.field
        if self.is_zero():
            return Fp2Element(field, 0, 0)

        if self.c1 == 0:
            a = FpElement(field, self.c0)
            if a.is_square():
                root = Fp2Element(field, a.sqrt().value, 0)
            else:
                # -1 is a non-residue, so -a is a residue and (t*i)^2 = a
                root = Fp2Element(field, 0, (-a).sqrt().value)
        else:
            n = self.norm()
            if not n.is_square():
                raise NotASquare(f'{self!r} is not a square.')
            alpha = n.sqrt()
            half = field.invert(2)
            delta = (alpha + self.c0) * half
            if not delta.is_square():
                delta = (self.c0 - alpha) * half
            x0 = delta.sqrt()
            x1 = FpElement(field, self.c1 * half) / x0
            root = Fp2Element(field, x0.value, x1.value)

        if root * root != self:
            raise NotASquare(f'{self!r} is not a square.')
        other = -root
        return root if root.key() <= other.key() else other
