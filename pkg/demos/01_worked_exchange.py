"""
A complete exchange in the 23-element group
===========================================

Alice holds (x, y, z) = (3, 6, 4) and Bob (7, 8, 2).  We walk the session
state machine by hand and print every value that crosses the wire.
"""

from qke import DomainParams, IntermediateValue, Role, keypair_from_exponents, start_session

params = DomainParams(23, 5)
alice_sk, alice_pk = keypair_from_exponents(params, 3, 6, 4)
bob_sk, bob_pk = keypair_from_exponents(params, 7, 8, 2)

print("Alice public (P, Q):", (alice_pk.P, alice_pk.Q), " w_a =", alice_sk.w)
print("Bob   public (P, Q):", (bob_pk.P, bob_pk.Q), " w_b =", bob_sk.w)

###############################################################################
# Each side takes the other's public key, then computes its intermediate
# (P_peer^x * Q_peer^y)^w.  The two intermediates may be sent in any order.

alice = start_session(Role.INITIATOR, alice_sk)
bob = start_session(Role.RESPONDER, bob_sk)
alice.receive_peer_public(bob_pk)
bob.receive_peer_public(alice_pk)

to_bob = alice.compute_intermediate()
to_alice = bob.compute_intermediate()
print("Alice -> Bob:", to_bob.value)
print("Bob -> Alice:", to_alice.value)

###############################################################################
# Finalizing strips g^z with the local z and raises to the local w.

print("Alice's key:", alice.finalize(IntermediateValue(to_alice.value)))
print("Bob's key:  ", bob.finalize(IntermediateValue(to_bob.value)))
print("state:", alice.state.name)
