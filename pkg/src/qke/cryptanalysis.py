"""Desk-scale adversary harness.

An adversary with a discrete-log oracle turns every observed group element
into a linear residue mod p - 1.  The three observation models give:

* public only:  x + z = c1, y + z = c2
* channel:      the above for both parties, plus both intermediates
                w_a (x_a x_b + y_a y_b) + z_b = c5 and
                w_b (x_a x_b + y_a y_b) + z_a = c6
* insider:      Alice's public key plus the intermediate she sent to the
                adversary's own key, w_a (x_a x_e + y_a y_e) = c3

:func:`enumerate_solutions` counts every private key consistent with a system,
either with w bound to (x + y)^-1 (what the protocol actually computes) or
with w left free (any w that makes its equation solvable).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numba
import numpy as np

from .errors import ParameterError, ScaleError
from .keys import PrivateKey, PublicKey
from .modmath import DomainParams, mod_inv
from .protocol import IntermediateValue

DLOG_MAX_P = 1 << 40
ENUM_MAX_ORDER = 1 << 16
MAX_REPORTED_CANDIDATES = 1000
_DENSE_MAX_P = 1 << 24


class AdversaryModel(enum.Enum):
    PUBLIC_ONLY = "public"
    CHANNEL = "channel"
    INSIDER = "insider"


class WInterpretation(enum.Enum):
    FREE_VARIABLE = "free"
    DERIVED_FROM_KEY = "derived"


_EXPECTED_CONSTRAINTS = {
    AdversaryModel.PUBLIC_ONLY: 2,
    AdversaryModel.CHANNEL: 6,
    AdversaryModel.INSIDER: 3,
}


# ---------------------------------------------------------------------------
# discrete logarithms
# ---------------------------------------------------------------------------

def _check_dlog_scale(params: DomainParams):
    if params.p > DLOG_MAX_P:
        raise ScaleError(f"p has {params.bits} bits; discrete log is capped at 40 bits")


def _giant_stride(n: int) -> int:
    return math.isqrt(n - 1) + 1 if n > 1 else 1


@lru_cache(maxsize=16)
def _baby_steps(p: int, g: int) -> tuple[dict, int, int]:
    m = _giant_stride(p - 1)
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * g % p
    return table, m, pow(g, -m, p)


def discrete_log(target: int, params: DomainParams) -> int:
    """Smallest e >= 0 with g^e == target (mod p), by baby-step giant-step."""
    _check_dlog_scale(params)
    p = params.p
    if not 1 <= target <= p - 1:
        raise ParameterError(f"target {target} outside [1, p-1]")
    table, m, factor = _baby_steps(p, params.g)
    cur = target
    for i in range(m):
        j = table.get(cur)
        if j is not None:
            return i * m + j
        cur = cur * factor % p
    raise ParameterError(f"{target} is not a power of g")  # unreachable for a primitive root


@numba.njit(cache=True)
def _bsgs_dense(p, g, factor, m, targets):
    table = np.full(p, -1, np.int32)
    cur = 1
    for j in range(m):
        if table[cur] < 0:
            table[cur] = j
        cur = cur * g % p
    step = np.empty(p, np.int32)
    for a in range(p):
        step[a] = a * factor % p
    k = targets.size
    out = np.full(k, -1, np.int64)
    vals = targets.astype(np.int32)
    idx = np.arange(k).astype(np.int32)
    # all targets advance one giant step per pass; solved ones are compacted out
    for i in range(m):
        w = 0
        for t in range(k):
            v = vals[t]
            j = table[v]
            if j >= 0:
                out[idx[t]] = i * m + j
            else:
                vals[w] = step[v]
                idx[w] = idx[t]
                w += 1
        k = w
        if k == 0:
            break
    return out


def discrete_log_many(targets: Sequence[int], params: DomainParams) -> np.ndarray:
    """Vectorised :func:`discrete_log` over many targets in one group.

    Same baby/giant split as the scalar version; groups below 2**24 use a
    compiled kernel with dense lookup tables.
    """
    _check_dlog_scale(params)
    p = params.p
    arr = np.asarray(targets, dtype=np.int64)
    if arr.size and (arr.min() < 1 or arr.max() > p - 1):
        raise ParameterError("targets must lie in [1, p-1]")
    if p > _DENSE_MAX_P:
        return np.array([discrete_log(int(t), params) for t in arr], dtype=np.int64)
    m = _giant_stride(p - 1)
    return _bsgs_dense(p, params.g, pow(params.g, -m, p), m, arr)


# ---------------------------------------------------------------------------
# constraint systems
# ---------------------------------------------------------------------------

@dataclass
class ConstraintSystem:
    """Residues mod p - 1 recovered by a discrete-log-capable adversary."""

    modulus: int
    knowns: dict
    adversary_model: AdversaryModel
    insider_key: Optional[PrivateKey] = None
    w_interpretation: WInterpretation = WInterpretation.DERIVED_FROM_KEY

    def __post_init__(self):
        want = _EXPECTED_CONSTRAINTS[self.adversary_model]
        if len(self.knowns) != want:
            raise ParameterError(f"{self.adversary_model.value} system needs {want} residues, got {len(self.knowns)}")
        if self.adversary_model is AdversaryModel.INSIDER and self.insider_key is None:
            raise ParameterError("insider system needs the adversary's own private key")

    @property
    def constraint_count(self) -> int:
        return len(self.knowns)

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(self.knowns[f"c{i}"] for i in range(1, len(self.knowns) + 1))


def _same_group(*keys):
    first = keys[0].params
    for k in keys[1:]:
        if k.params != first:
            raise ParameterError("all inputs must share one group")
    return first


def constraints_from_public_key(pk: PublicKey) -> ConstraintSystem:
    params = pk.params
    return ConstraintSystem(
        params.order,
        {"c1": discrete_log(pk.P, params), "c2": discrete_log(pk.Q, params)},
        AdversaryModel.PUBLIC_ONLY,
    )


def constraints_from_transcript(
    pk_a: PublicKey, pk_b: PublicKey, msg_ab: IntermediateValue, msg_ba: IntermediateValue
) -> ConstraintSystem:
    """``msg_ab`` is the intermediate Alice sent to Bob, ``msg_ba`` the reply."""
    params = _same_group(pk_a, pk_b)
    dl = lambda v: discrete_log(v, params)  # noqa: E731
    knowns = {
        "c1": dl(pk_a.P),
        "c2": dl(pk_a.Q),
        "c3": dl(pk_b.P),
        "c4": dl(pk_b.Q),
        "c5": dl(msg_ab.value),
        "c6": dl(msg_ba.value),
    }
    return ConstraintSystem(params.order, knowns, AdversaryModel.CHANNEL)


def constraints_from_insider(pk_a: PublicKey, eve_key: PrivateKey, msg_from_alice: IntermediateValue) -> ConstraintSystem:
    params = _same_group(pk_a, eve_key)
    p = params.p
    stripped = msg_from_alice.value * mod_inv(pow(params.g, eve_key.z, p), p) % p
    knowns = {
        "c1": discrete_log(pk_a.P, params),
        "c2": discrete_log(pk_a.Q, params),
        "c3": discrete_log(stripped, params),
    }
    return ConstraintSystem(params.order, knowns, AdversaryModel.INSIDER, insider_key=eve_key)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@dataclass
class SolutionReport:
    candidate_count: int
    contains_true_key: Optional[bool]
    candidates: list = field(default_factory=list)
    interpretation: WInterpretation = WInterpretation.DERIVED_FROM_KEY
    # full (Alice, Bob) assignments; differs from candidate_count only for channel systems
    assignment_count: int = 0


@lru_cache(maxsize=8)
def _inverse_table(n: int) -> np.ndarray:
    inv = np.zeros(n, dtype=np.int64)
    for u in range(1, n):
        if math.gcd(u, n) == 1:
            inv[u] = pow(u, -1, n)
    return inv


def _is_unit(values: np.ndarray, n: int) -> np.ndarray:
    return np.gcd(values, n) == 1


def _solvable(coeff: np.ndarray, rhs, n: int) -> np.ndarray:
    """Whether w * coeff == rhs (mod n) has some solution w."""
    return np.mod(rhs, np.gcd(coeff, n)) == 0


def _public_mask(system: ConstraintSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = system.modulus
    z = np.arange(n, dtype=np.int64)
    x = (system.knowns["c1"] - z) % n
    y = (system.knowns["c2"] - z) % n
    return x, y, z


def _mask_public(system, interp):
    x, y, z = _public_mask(system)
    return x, y, z, _is_unit((x + y) % system.modulus, system.modulus)


def _mask_insider(system, interp):
    n = system.modulus
    x, y, z = _public_mask(system)
    s = (x + y) % n
    ok = _is_unit(s, n)
    eve = system.insider_key
    a = (x * (eve.x % n) + y * (eve.y % n)) % n
    c3 = system.knowns["c3"]
    if interp is WInterpretation.DERIVED_FROM_KEY:
        ok &= (_inverse_table(n)[s] * a) % n == c3
    else:
        ok &= _solvable(a, c3, n)
    return x, y, z, ok


def _mask_channel(system, interp):
    n = system.modulus
    c = system.knowns
    x, y, z = _public_mask(system)
    ok = _is_unit((x + y) % n, n)
    inv = _inverse_table(n)
    zb = np.arange(n, dtype=np.int64)
    xb = (c["c3"] - zb) % n
    yb = (c["c4"] - zb) % n
    sb = (xb + yb) % n
    bob_ok = _is_unit(sb, n)
    wb = inv[sb]
    assignments = 0
    for za in np.flatnonzero(ok):
        xa, ya = int(x[za]), int(y[za])
        cross = (xa * xb + ya * yb) % n
        if interp is WInterpretation.DERIVED_FROM_KEY:
            wa = int(inv[(xa + ya) % n])
            hit = bob_ok & ((wa * cross + zb) % n == c["c5"]) & ((wb * cross + za) % n == c["c6"])
        else:
            hit = bob_ok & _solvable(cross, c["c5"] - zb, n) & _solvable(cross, c["c6"] - za, n)
        count = int(np.count_nonzero(hit))
        assignments += count
        ok[za] = count > 0
    return x, y, z, ok, assignments


def enumerate_solutions(
    system: ConstraintSystem,
    true_key: Optional[PrivateKey] = None,
    interpretation: Optional[WInterpretation] = None,
) -> SolutionReport:
    """Exhaustively list private keys (x, y, z) consistent with ``system``.

    Every candidate must also satisfy gcd(x + y, p - 1) = 1.  The free
    variable is z (z_a and z_b for channel systems).  ``interpretation``
    overrides ``system.w_interpretation``.
    """
    n = system.modulus
    if n > ENUM_MAX_ORDER:
        raise ScaleError(f"p - 1 = {n} exceeds the exhaustive-enumeration cap of 2**16")
    interp = interpretation or system.w_interpretation
    assignments = None
    if system.adversary_model is AdversaryModel.PUBLIC_ONLY:
        x, y, z, ok = _mask_public(system, interp)
    elif system.adversary_model is AdversaryModel.INSIDER:
        x, y, z, ok = _mask_insider(system, interp)
    else:
        x, y, z, ok, assignments = _mask_channel(system, interp)
    hits = np.flatnonzero(ok)
    candidates = [(int(x[i]), int(y[i]), int(z[i])) for i in hits[:MAX_REPORTED_CANDIDATES]]
    contains = None
    if true_key is not None:
        t = int(true_key.z) % n
        contains = bool(ok[t]) and int(x[t]) == true_key.x % n and int(y[t]) == true_key.y % n
    return SolutionReport(
        candidate_count=int(hits.size),
        contains_true_key=contains,
        candidates=candidates,
        interpretation=interp,
        assignment_count=int(hits.size) if assignments is None else assignments,
    )


def analyze(system: ConstraintSystem, true_key: Optional[PrivateKey] = None) -> dict:
    """Reports for both w interpretations, keyed by :class:`WInterpretation`."""
    return {interp: enumerate_solutions(system, true_key, interp) for interp in WInterpretation}
