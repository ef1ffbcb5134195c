"""
Renewing keys from earlier keys
===============================

A new key is g^k0 * g^k1 mod p.  Someone who learns only the new key sees
p - 1 equally plausible factorizations into two group elements.
"""

from qke import DomainParams, ratchet_next_key
from qke.modmath import mod_inv

params = DomainParams(23, 5)
k0, k1 = 5, 2
k_new = ratchet_next_key(params, k0, k1)
print("k0, k1 =", (k0, k1), "->", k_new)

g_k0 = pow(params.g, k0, params.p)
print("recover g^k1 from the new key and g^k0:", k_new * mod_inv(g_k0, params.p) % params.p, "==", pow(params.g, k1, params.p))

pairs = [(a, b) for a in range(1, 23) for b in range(1, 23) if a * b % 23 == k_new]
print(f"factor pairs of {k_new}: {len(pairs)}")
