"""Textbook Diffie-Hellman and multiplicative ElGamal over the same groups.

These exist for comparison and demos, not for production use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .modmath import DomainParams, mod_inv, sample_exponent


@dataclass(frozen=True)
class DhKeypair:
    secret: int
    params: DomainParams
    public: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "public", pow(self.params.g, self.secret, self.params.p))


def dh_keypair(params: DomainParams, rng=None) -> DhKeypair:
    return DhKeypair(sample_exponent(params, rng=rng), params)


def _check_residue(value: int, p: int, what: str):
    if not 1 <= value <= p - 1:
        raise ValidationError(f"{what}={value} outside [1, p-1]")


def dh_shared(local: DhKeypair, peer_public: int) -> int:
    p = local.params.p
    _check_residue(peer_public, p, "peer_public")
    return pow(peer_public, local.secret, p)


@dataclass(frozen=True)
class ElgamalCiphertext:
    ephemeral: int
    body: int


def elgamal_encrypt(peer_public: int, m: int, ephemeral_exponent: int, params: DomainParams) -> ElgamalCiphertext:
    """Encrypt ``m`` to the holder of ``peer_public`` = g^x_b.

    The session key is peer_public^y and the body is m times that key.
    """
    p = params.p
    _check_residue(m, p, "m")
    _check_residue(peer_public, p, "peer_public")
    k_s = pow(peer_public, ephemeral_exponent, p)
    return ElgamalCiphertext(pow(params.g, ephemeral_exponent, p), m * k_s % p)


def elgamal_decrypt(ct: ElgamalCiphertext, secret: int, params: DomainParams) -> int:
    p = params.p
    _check_residue(ct.ephemeral, p, "ephemeral")
    _check_residue(ct.body, p, "body")
    k_s = pow(ct.ephemeral, secret, p)
    return ct.body * mod_inv(k_s, p) % p
