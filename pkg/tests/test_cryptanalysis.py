import math
import random

import pytest

from qke.cryptanalysis import (
    AdversaryModel,
    ConstraintSystem,
    WInterpretation,
    analyze,
    constraints_from_insider,
    constraints_from_public_key,
    constraints_from_transcript,
    discrete_log,
    discrete_log_many,
    enumerate_solutions,
)
from qke.errors import ParameterError, ScaleError
from qke.keys import generate_keypair, keypair_from_exponents
from qke.modmath import DomainParams, find_primitive_root, generate_params
from qke.protocol import IntermediateValue, run_exchange
from tests.oracles import brute_channel, brute_insider, brute_public, log_table, safe_primes_upto

FREE, DERIVED = WInterpretation.FREE_VARIABLE, WInterpretation.DERIVED_FROM_KEY
pytestmark = pytest.mark.filterwarnings("ignore::qke.protocol.DegenerateKeyWarning")

SMALL = [DomainParams(p, find_primitive_root(p)) for p in safe_primes_upto(200) if p > 7]


def test_discrete_log_examples(worked_params):
    assert discrete_log(17, worked_params) == 7
    assert discrete_log(1, worked_params) == 0
    assert discrete_log(9, worked_params) == 10


def test_discrete_log_errors(worked_params):
    with pytest.raises(ParameterError):
        discrete_log(0, worked_params)
    with pytest.raises(ParameterError):
        discrete_log(23, worked_params)
    big = generate_params(41, random.Random(1))
    with pytest.raises(ScaleError):
        discrete_log(2, big)
    with pytest.raises(ScaleError):
        discrete_log_many([2], big)


def test_discrete_log_matches_table_small_primes():
    for p in safe_primes_upto(2000):
        g = find_primitive_root(p)
        params = DomainParams(p, g)
        table = log_table(g, p)
        assert all(discrete_log(t, params) == e for t, e in table.items())


def test_discrete_log_40_bit():
    rng = random.Random(40)
    params = generate_params(40, rng)
    for _ in range(5):
        e = rng.randrange(params.order)
        assert discrete_log(pow(params.g, e, params.p), params) == e


def test_discrete_log_many_agrees_with_scalar():
    rng = random.Random(3)
    for bits in (16, 20, 26):
        params = generate_params(bits, rng)
        targets = [rng.randrange(1, params.p) for _ in range(300)]
        many = discrete_log_many(targets, params)
        assert list(many) == [discrete_log(t, params) for t in targets]
    assert discrete_log_many([], SMALL[0]).size == 0


def test_public_constraints(worked_params, alice):
    sk, pk = alice
    system = constraints_from_public_key(pk)
    assert system.residues == (7, 10)
    assert system.adversary_model is AdversaryModel.PUBLIC_ONLY and system.constraint_count == 2
    _, pk0 = keypair_from_exponents(worked_params, 0, 1, 0)
    assert constraints_from_public_key(pk0).residues == (0, 1)
    # shift by delta=1: (2, 5, 5); x+y = 7 still a unit
    _, shifted = keypair_from_exponents(worked_params, 2, 5, 5)
    assert constraints_from_public_key(shifted).residues == (7, 10)


def test_transcript_constraints(alice, bob):
    (sa, pa), (sb, pb) = alice, bob
    system = constraints_from_transcript(pa, pb, IntermediateValue(15), IntermediateValue(21))
    assert system.residues == (7, 10, 9, 10, 17, 13)
    assert system.constraint_count == 6
    n = 22
    g_ab = sa.x * sb.x + sa.y * sb.y
    assert (sa.x + sa.z) % n == 7 and (sa.y + sa.z) % n == 10
    assert (sb.x + sb.z) % n == 9 and (sb.y + sb.z) % n == 10
    assert (sa.w * g_ab + sb.z) % n == 17 and (sb.w * g_ab + sa.z) % n == 13


def test_transcript_relabeling(alice, bob):
    (sa, pa), (sb, pb) = alice, bob
    forward = constraints_from_transcript(pa, pb, IntermediateValue(15), IntermediateValue(21))
    swapped = constraints_from_transcript(pb, pa, IntermediateValue(21), IntermediateValue(15))
    assert swapped.residues == (9, 10, 7, 10, 13, 17)
    for interp in WInterpretation:
        f = enumerate_solutions(forward, sa, interp)
        s = enumerate_solutions(swapped, sb, interp)
        assert f.contains_true_key and s.contains_true_key
        assert f.assignment_count == s.assignment_count


def test_insider_constraints(alice, bob):
    (sa, pa), (sb, _) = alice, bob
    system = constraints_from_insider(pa, sb, IntermediateValue(15))
    assert system.residues == (7, 10, 15)
    assert system.constraint_count == 3 and system.insider_key == sb
    assert sa.w * (sa.x * sb.x + sa.y * sb.y) % 22 == 15


def test_constraint_count_invariant():
    with pytest.raises(ParameterError):
        ConstraintSystem(22, {"c1": 1}, AdversaryModel.PUBLIC_ONLY)
    with pytest.raises(ParameterError):
        ConstraintSystem(22, {"c1": 1, "c2": 2, "c3": 3}, AdversaryModel.INSIDER)


def test_enumerate_public_worked(alice):
    sk, pk = alice
    system = constraints_from_public_key(pk)
    oracle = brute_public(7, 10, 22)
    assert len(oracle) == 20 and sk_triple(sk) in oracle
    assert {(z) for (_, _, z) in oracle} == {z for z in range(22) if z % 11 != 3}
    for interp in WInterpretation:
        report = enumerate_solutions(system, sk, interp)
        assert report.candidate_count == 20 and report.contains_true_key
        assert set(report.candidates) == oracle


def sk_triple(sk):
    return (sk.x, sk.y, sk.z)


def test_enumerate_insider_worked(alice, bob):
    (sa, pa), (sb, _) = alice, bob
    system = constraints_from_insider(pa, sb, IntermediateValue(15))
    derived = enumerate_solutions(system, sa, DERIVED)
    assert derived.candidates == [(3, 6, 4)] and derived.candidate_count == 1
    assert brute_insider(7, 10, 15, 7, 8, 22, derived=True) == {(3, 6, 4)}
    free = enumerate_solutions(system, sa, FREE)
    oracle = brute_insider(7, 10, 15, 7, 8, 22, derived=False)
    assert free.candidate_count == len(oracle) == 9
    assert set(free.candidates) == oracle and free.contains_true_key


def test_enumerate_channel_worked(alice, bob):
    (sa, pa), (_, pb) = alice, bob
    system = constraints_from_transcript(pa, pb, IntermediateValue(15), IntermediateValue(21))
    for interp, derived in ((DERIVED, True), (FREE, False)):
        report = enumerate_solutions(system, sa, interp)
        triples, assignments = brute_channel(system.residues, 22, derived)
        assert set(report.candidates) == triples
        assert report.candidate_count == len(triples)
        assert report.assignment_count == assignments
        assert report.contains_true_key


def test_public_count_formula_all_small_primes():
    rng = random.Random(17)
    for params in SMALL:
        n = params.order
        pairs = [(c1, c2) for c1 in range(n) for c2 in range(n)] if n <= 46 else [
            (rng.randrange(n), rng.randrange(n)) for _ in range(40)
        ]
        for c1, c2 in pairs:
            system = ConstraintSystem(n, {"c1": c1, "c2": c2}, AdversaryModel.PUBLIC_ONLY)
            formula = sum(1 for z in range(n) if math.gcd((c1 + c2 - 2 * z) % n, n) == 1)
            report = enumerate_solutions(system)
            assert report.candidate_count == formula
            orbit = {((c1 - z) % n, (c2 - z) % n, z) for z in range(n)}
            valid = {t for t in orbit if math.gcd((t[0] + t[1]) % n, n) == 1}
            assert set(report.candidates) == valid
            if n == 22 and (c1, c2) in ((0, 0), (7, 10), (21, 4)):
                assert valid == brute_public(c1, c2, n)


def _real_run(params, rng):
    sa, pa = generate_keypair(params, rng)
    sb, pb = generate_keypair(params, rng)
    a, b = run_exchange(sa, sb)
    return sa, pa, sb, pb, a, b


def test_soundness_and_interpretation_gap():
    rng = random.Random(2025)
    for _ in range(100):
        params = rng.choice(SMALL)
        sa, pa, sb, pb, a, b = _real_run(params, rng)
        systems = [
            constraints_from_public_key(pa),
            constraints_from_insider(pa, sb, IntermediateValue(a.outgoing_intermediate)),
        ]
        if params.p <= 107:
            systems.append(
                constraints_from_transcript(pa, pb, IntermediateValue(a.outgoing_intermediate), IntermediateValue(b.outgoing_intermediate))
            )
        for system in systems:
            reports = analyze(system, sa)
            assert reports[DERIVED].contains_true_key and reports[FREE].contains_true_key
            assert reports[FREE].candidate_count >= reports[DERIVED].candidate_count
            assert set(reports[DERIVED].candidates) <= set(reports[FREE].candidates)


def test_insider_free_matches_oracle_random():
    rng = random.Random(8)
    for _ in range(30):
        params = rng.choice(SMALL[:8])
        sa, pa, sb, pb, a, b = _real_run(params, rng)
        system = constraints_from_insider(pa, sb, IntermediateValue(a.outgoing_intermediate))
        c1, c2, c3 = system.residues
        n = params.order
        for interp, derived in ((DERIVED, True), (FREE, False)):
            oracle = brute_insider(c1, c2, c3, sb.x, sb.y, n, derived)
            assert set(enumerate_solutions(system, interpretation=interp).candidates) == oracle


def test_enumeration_scale_cap():
    system = ConstraintSystem((1 << 16) + 2, {"c1": 1, "c2": 2}, AdversaryModel.PUBLIC_ONLY)
    with pytest.raises(ScaleError):
        enumerate_solutions(system)


def test_candidates_capped():
    # only the modulus matters to the enumerator
    n = 4094
    system = ConstraintSystem(n, {"c1": 1, "c2": 4}, AdversaryModel.PUBLIC_ONLY)
    report = enumerate_solutions(system)
    assert report.candidate_count > 1000
    assert len(report.candidates) == 1000


def test_true_key_absent_reports_none(alice):
    report = enumerate_solutions(constraints_from_public_key(alice[1]))
    assert report.contains_true_key is None


def test_wrong_true_key_not_contained(alice, bob):
    report = enumerate_solutions(constraints_from_public_key(alice[1]), bob[0])
    assert report.contains_true_key is False
