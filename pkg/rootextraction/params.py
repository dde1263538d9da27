"""
Parameter search for the family p = l^e * f - 1 with E: y^2 = x^3 + x.
"""
import logging
from dataclasses import dataclass

import gmpy2

from .conf import grep_settings
from .exceptions import BadParams, NotFound
from .torsion import TorsionContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParamRequest:
    l: int
    e: int
    f_max: int = None
    sign: int = -1

    def __post_init__(self):
        if not gmpy2.is_prime(self.l):
            raise BadParams(f'l = {self.l} is not prime.')
        if self.e < 1:
            raise BadParams('e must be positive.')
        if self.sign not in (-1, 1):
            raise BadParams('sign must be -1 or +1.')


def gen_params(req):
    """
    Smallest f in [1, f_max] with gcd(f, l) = 1 and p = l^e * f - 1 a prime
    congruent to 3 mod 4.
    """
    if req.sign != -1:
        raise BadParams(
            'Only the p = l^e * f - 1 family is supported.',
            code='unsupported_family',
        )
    f_max = req.f_max or grep_settings.F_MAX
    rounds = grep_settings.PRIMALITY_ROUNDS
    base = req.l ** req.e
    for f in range(1, f_max + 1):
        if f % req.l == 0:
            continue
        p = base * f - 1
        if p < 3 or p % 4 != 3 or not gmpy2.is_prime(p, rounds):
            continue
        logger.info('gen_params: l=%d e=%d -> f=%d, p=%d', req.l, req.e, f, p)
        return TorsionContext.from_params(p, req.l, req.e, f)
    raise NotFound(f'No prime l^e * f - 1 with f <= {f_max} for l={req.l}, e={req.e}.')
