"""
The rank-2 l^e-torsion group interface the solvers are written against, and
its elliptic-curve backend. The model backend lives in `model`.
"""
from abc import ABC, abstractmethod

from . import dlog, torsion
from .curve import IDENTITY


class TorsionGroup(ABC):
    """
    A group isomorphic to (Z/l^e)^2 with the operations the solvers need.
    Elements are opaque to the solvers.
    """
    l = None
    e = None

    @property
    def order(self):
        """Exponent of the group, l^e."""
        return self.l ** self.e

    @property
    @abstractmethod
    def identity(self):
        ...

    @abstractmethod
    def add(self, X, Y):
        ...

    @abstractmethod
    def neg(self, X):
        ...

    @abstractmethod
    def mul(self, k, X):
        ...

    @abstractmethod
    def contains(self, X):
        ...

    @abstractmethod
    def lpower_order(self, X):
        """u with ord(X) = l^u."""

    @abstractmethod
    def find_basis(self, rng):
        """A TorsionBasis of the whole group."""

    @abstractmethod
    def complete_basis(self, K, rng):
        """K' with <K, K'> equal to the whole group, for K of order l^e."""

    @abstractmethod
    def extended_dlog(self, K, basis):
        """ExtendedDlog of K in the given basis."""

    @abstractmethod
    def is_independent(self, P, Q):
        ...

    def sub(self, X, Y):
        return self.add(X, self.neg(Y))

    def combine(self, a, X, b, Y):
        """a*X + b*Y."""
        return self.add(self.mul(a, X), self.mul(b, Y))


class CurveTorsionGroup(TorsionGroup):
    """E[l^e] of a TorsionContext."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.curve = ctx.curve
        self.l = ctx.l
        self.e = ctx.e

    def __repr__(self):
        return f'CurveTorsionGroup({self.ctx!r})'

    @property
    def identity(self):
        return IDENTITY

    def add(self, X, Y):
        return self.curve._add(X, Y)

    def neg(self, X):
        return self.curve.neg(X)

    def mul(self, k, X):
        return self.curve.scalar_mul(k, X)

    def contains(self, X):
        return self.ctx.contains(X)

    def lpower_order(self, X):
        return self.curve.point_lpower_order(X, self.l, self.e)

    def find_basis(self, rng):
        return torsion.find_basis(self.ctx, rng)

    def complete_basis(self, K, rng):
        return torsion.complete_basis(K, self.ctx, rng)

    def extended_dlog(self, K, basis):
        return dlog.extended_dlog(K, basis, self.ctx)

    def is_independent(self, P, Q):
        return torsion.is_independent(P, Q, self.ctx)
