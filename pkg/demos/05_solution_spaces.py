"""
How many private keys fit what an adversary sees?
=================================================

With a discrete-log oracle (here baby-step giant-step, fine for tiny groups)
every observed group element becomes a residue mod p - 1.  We then count
every (x, y, z) consistent with those residues, once with w tied to
(x + y)^-1 and once with w treated as an unknown of its own.
"""

from qke import DomainParams, keypair_from_exponents, run_exchange
from qke.cryptanalysis import (
    WInterpretation,
    analyze,
    constraints_from_insider,
    constraints_from_public_key,
    constraints_from_transcript,
)
from qke.protocol import IntermediateValue

params = DomainParams(23, 5)
sa, pa = keypair_from_exponents(params, 3, 6, 4)
sb, pb = keypair_from_exponents(params, 7, 8, 2)
alice, bob = run_exchange(sa, sb)
msg_ab = IntermediateValue(alice.outgoing_intermediate)
msg_ba = IntermediateValue(bob.outgoing_intermediate)

systems = {
    "public key only": constraints_from_public_key(pa),
    "passive channel": constraints_from_transcript(pa, pb, msg_ab, msg_ba),
    "Bob as insider": constraints_from_insider(pa, sb, msg_ab),
}

for name, system in systems.items():
    reports = analyze(system, sa)
    derived = reports[WInterpretation.DERIVED_FROM_KEY]
    free = reports[WInterpretation.FREE_VARIABLE]
    print(f"{name:16s} residues={system.residues}")
    print(f"{'':16s} w = (x+y)^-1 : {derived.candidate_count:3d} candidates, true key found: {derived.contains_true_key}")
    print(f"{'':16s} w free       : {free.candidate_count:3d} candidates")
    if derived.candidate_count <= 3:
        print(f"{'':16s} -> {derived.candidates}")
