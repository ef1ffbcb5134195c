"""Modular arithmetic over safe-prime groups.

Every exponent in the package lives in Z_{p-1} and every public value in
Z_p^*.  Only safe primes p = 2q + 1 are supported, which makes primitive-root
testing a matter of two exponentiations.

Random sources are anything with the ``random.Random`` interface
(``randrange`` and ``getrandbits``).  Pass ``random.Random(seed)`` for
reproducible output; ``None`` means the OS entropy pool.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import NotInvertibleError, ParameterError

MR_ROUNDS = 40

_TRIAL_LIMIT = 1 << 16
_SIEVE_PRIMES = [n for n in range(3, 2000, 2) if all(n % d for d in range(3, math.isqrt(n) + 1, 2))]


def _default_rng(rng):
    return rng if rng is not None else random.SystemRandom()


def mod_exp(base: int, exponent: int, modulus: int) -> int:
    """Return ``base**exponent % modulus``.

    Backed by the built-in three-argument ``pow`` (binary square-and-multiply).
    """
    if modulus < 2:
        raise ParameterError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise ParameterError("exponent must be non-negative")
    return pow(base, exponent, modulus)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    return old_r, old_s, old_t


def mod_inv(a: int, modulus: int) -> int:
    """Inverse of ``a`` modulo ``modulus``.

    Raises NotInvertibleError (carrying the gcd) when no inverse exists.
    """
    if modulus < 2:
        raise ParameterError(f"modulus must be >= 2, got {modulus}")
    g, s, _ = egcd(a % modulus, modulus)
    if g != 1:
        raise NotInvertibleError(a, modulus, g)
    return s % modulus


def _trial_division(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _miller_rabin_witness(a: int, n: int, d: int, s: int) -> bool:
    """True if ``a`` proves ``n`` composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int, rounds: int = MR_ROUNDS, rng=None) -> bool:
    """Primality test.

    Exact trial division below 2**16, Miller-Rabin with ``rounds`` random
    bases above (false-positive rate at most 4**-rounds).
    """
    if rounds < 1:
        raise ParameterError("rounds must be >= 1")
    if n < _TRIAL_LIMIT:
        return _trial_division(n)
    if n % 2 == 0:
        return False
    for r in _SIEVE_PRIMES:
        if n % r == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = _default_rng(rng)
    for _ in range(rounds):
        if _miller_rabin_witness(rng.randrange(2, n - 1), n, d, s):
            return False
    return True


def _survives_sieve(q: int, p: int) -> bool:
    for r in _SIEVE_PRIMES:
        if r >= q:
            break
        if q % r == 0 or p % r == 0:
            return False
    return True


def generate_safe_prime(bits: int, rng=None, rounds: int = MR_ROUNDS) -> int:
    """Draw a safe prime p with exactly ``bits`` bits.

    Candidates q of ``bits - 1`` bits are drawn from ``rng`` until both q and
    2q + 1 pass the primality test.
    """
    if bits < 5:
        raise ParameterError(f"bits must be >= 5, got {bits}")
    rng = _default_rng(rng)
    top = 1 << (bits - 2)
    while True:
        q = rng.getrandbits(bits - 1) | top | 1
        p = 2 * q + 1
        if not _survives_sieve(q, p):
            continue
        # cheap base-2 Fermat screen before the full test
        if q > 3 and pow(2, q - 1, q) != 1:
            continue
        if pow(2, p - 1, p) != 1:
            continue
        if is_probable_prime(q, rounds) and is_probable_prime(p, rounds):
            return p


def _is_primitive_root(g: int, p: int, q: int) -> bool:
    return pow(g, 2, p) != 1 and pow(g, q, p) != 1


@dataclass(frozen=True)
class DomainParams:
    """A safe-prime group: modulus ``p``, its Sophie Germain half ``q`` and a
    primitive root ``g``.  Construction validates everything."""

    p: int
    g: int
    label: Optional[str] = field(default=None, compare=False)
    q: int = field(init=False)

    def __post_init__(self):
        p, g = self.p, self.g
        if p < 5 or p % 2 == 0:
            raise ParameterError(f"p must be an odd prime >= 5, got {p}")
        q = (p - 1) // 2
        if not is_probable_prime(p):
            raise ParameterError(f"p={p} is not prime")
        if not is_probable_prime(q):
            raise ParameterError(f"p={p} is not a safe prime ((p-1)/2={q} is composite)")
        if not 2 <= g <= p - 2:
            raise ParameterError(f"g must lie in [2, p-2], got {g}")
        if not _is_primitive_root(g, p, q):
            raise ParameterError(f"g={g} is not a primitive root modulo {p}")
        object.__setattr__(self, "q", q)

    @property
    def order(self) -> int:
        """Size of the exponent ring, p - 1."""
        return self.p - 1

    @property
    def bits(self) -> int:
        return self.p.bit_length()


def validate_primitive_root(g: int, params: DomainParams) -> bool:
    if not 2 <= g <= params.p - 2:
        raise ParameterError(f"g must lie in [2, p-2], got {g}")
    return _is_primitive_root(g, params.p, params.q)


def find_primitive_root(p: int) -> int:
    """Smallest primitive root of the safe prime ``p``."""
    q = (p - 1) // 2
    for g in range(2, p - 1):
        if _is_primitive_root(g, p, q):
            return g
    raise ParameterError(f"no primitive root found for p={p}")


def generate_params(bits: int, rng=None, label: Optional[str] = None) -> DomainParams:
    """Fresh safe-prime group of ``bits`` bits with its smallest primitive root."""
    p = generate_safe_prime(bits, rng)
    return DomainParams(p, find_primitive_root(p), label)


def sample_exponent(params: DomainParams, require_unit_sum_with: Optional[int] = None, rng=None) -> int:
    """Uniform exponent in [0, p-2].

    With ``require_unit_sum_with=s`` the draw is repeated until ``value + s``
    is a unit modulo p - 1.
    """
    rng = _default_rng(rng)
    n = params.order
    while True:
        value = rng.randrange(n)
        if require_unit_sum_with is None or math.gcd((value + require_unit_sum_with) % n, n) == 1:
            return value
