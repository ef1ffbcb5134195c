"""Key pairs for the two-component scheme.

A private key is three exponents (x, y, z) in Z_{p-1}; the public key is the
pair P = g^(x+z), Q = g^(y+z) mod p.  x + y must be a unit mod p - 1 so that
its inverse w can strip the blinding term during finalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NotInvertibleError, ParameterError
from .modmath import DomainParams, mod_inv, sample_exponent


@dataclass(frozen=True)
class PublicKey:
    P: int
    Q: int
    params: DomainParams


@dataclass(frozen=True)
class PrivateKey:
    x: int
    y: int
    z: int
    params: DomainParams
    w: int = field(init=False, repr=False)

    def __post_init__(self):
        n = self.params.order
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if not 0 <= value < n:
                raise ParameterError(f"{name}={value} outside [0, p-2]")
        s = (self.x + self.y) % n
        if math.gcd(s, n) != 1:
            raise NotInvertibleError(s, n, math.gcd(s, n))
        object.__setattr__(self, "w", mod_inv(s, n))

    def public_key(self) -> PublicKey:
        p, g, n = self.params.p, self.params.g, self.params.order
        return PublicKey(pow(g, (self.x + self.z) % n, p), pow(g, (self.y + self.z) % n, p), self.params)


def keypair_from_exponents(params: DomainParams, x: int, y: int, z: int) -> tuple[PrivateKey, PublicKey]:
    """Build a key pair from explicit exponents (reduced mod p - 1).

    Raises NotInvertibleError if x + y is not a unit.
    """
    n = params.order
    sk = PrivateKey(x % n, y % n, z % n, params)
    return sk, sk.public_key()


def generate_keypair(params: DomainParams, rng=None) -> tuple[PrivateKey, PublicKey]:
    # x is kept; only y is redrawn until x + y is invertible
    x = sample_exponent(params, rng=rng)
    y = sample_exponent(params, require_unit_sum_with=x, rng=rng)
    z = sample_exponent(params, rng=rng)
    return keypair_from_exponents(params, x, y, z)


def validate_public_key(pk: PublicKey) -> bool:
    p = pk.params.p
    return 1 <= pk.P <= p - 1 and 1 <= pk.Q <= p - 1
