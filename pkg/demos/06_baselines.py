"""
Diffie-Hellman and ElGamal for comparison
=========================================
"""

from qke import DomainParams
from qke.baselines import DhKeypair, dh_shared, elgamal_decrypt, elgamal_encrypt

params = DomainParams(23, 5)

alice, bob = DhKeypair(6, params), DhKeypair(15, params)
print("DH publics:", alice.public, bob.public)
print("DH shared: ", dh_shared(alice, bob.public), dh_shared(bob, alice.public))

bob_public = pow(params.g, 7, params.p)
ct = elgamal_encrypt(bob_public, 8, 3, params)
print("ElGamal ciphertext:", (ct.ephemeral, ct.body))
print("ElGamal recovered: ", elgamal_decrypt(ct, 7, params))
