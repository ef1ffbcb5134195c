"""
Serialized key sizes
====================

Every component is written at the width of p, so the private key is three
times |p|, the public key twice, the shared secret once.
"""

import random

from qke import generate_keypair, generate_params, run_exchange
from qke.wire import fixed_width_encode, width_for

rng = random.Random(3)
print(f"{'|p|':>5} {'private':>8} {'public':>7} {'secret':>7}   (bits)")
for bits in (128, 256, 512):
    params = generate_params(bits, rng)
    a, pk = generate_keypair(params, rng)
    b, _ = generate_keypair(params, rng)
    alice, _ = run_exchange(a, b)
    w = width_for(params)
    sizes = [8 * len(fixed_width_encode(k, w)) for k in (a, pk, alice.shared_key)]
    print(f"{bits:>5} {sizes[0]:>8} {sizes[1]:>7} {sizes[2]:>7}")
