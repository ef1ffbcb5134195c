"""Session state machine for the four-message key establishment.

Flow for one side (the other side is symmetric)::

    s = start_session(Role.INITIATOR, sk, pk)
    s.receive_peer_public(peer_pk)            # Fresh -> PeerKeySet
    msg = s.compute_intermediate()            # -> IntermediateComputed, send msg
    key = s.finalize(peer_msg)                # -> Established

The intermediate sent by side j to side i is (P_i^x_j * Q_i^y_j)^w_j, which
equals g^(w_j (x_i x_j + y_i y_j)) * g^z_i.  The receiver strips g^z_i and
raises to its own w, so both sides end with
g^(w_i w_j (x_i x_j + y_i y_j)).
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import ParameterError, ProtocolOrderError, ValidationError
from .keys import PrivateKey, PublicKey, validate_public_key
from .modmath import DomainParams, mod_inv


class Role(enum.Enum):
    INITIATOR = "initiator"
    RESPONDER = "responder"


class SessionState(enum.IntEnum):
    FRESH = 0
    PEER_KEY_SET = 1
    INTERMEDIATE_COMPUTED = 2
    ESTABLISHED = 3


class DegenerateKeyWarning(UserWarning):
    """The established key is 1 (the exponent x_a x_b + y_a y_b vanished)."""


@dataclass(frozen=True)
class IntermediateValue:
    value: int


class Session:
    """One party's view of a key establishment.  Single owner, not thread-safe."""

    def __init__(self, role: Role, local_private: PrivateKey, local_public: Optional[PublicKey] = None):
        self.role = role
        self.local_private = local_private
        self.local_public = local_public if local_public is not None else local_private.public_key()
        self.peer_public: Optional[PublicKey] = None
        self.outgoing_intermediate: Optional[int] = None
        self.incoming_intermediate: Optional[int] = None
        self.state = SessionState.FRESH
        self.shared_key: Optional[int] = None
        self.degenerate = False

    @property
    def params(self) -> DomainParams:
        return self.local_private.params

    def _require(self, state: SessionState, op: str):
        if self.state != state:
            raise ProtocolOrderError(f"{op} requires state {state.name}, session is {self.state.name}")

    def receive_peer_public(self, pk: PublicKey) -> "Session":
        self._require(SessionState.FRESH, "receive_peer_public")
        if pk.params != self.params:
            raise ParameterError("peer public key uses different domain parameters")
        if not validate_public_key(pk):
            raise ValidationError(f"peer public key out of range: P={pk.P}, Q={pk.Q}")
        self.peer_public = pk
        self.state = SessionState.PEER_KEY_SET
        return self

    def compute_intermediate(self) -> IntermediateValue:
        self._require(SessionState.PEER_KEY_SET, "compute_intermediate")
        sk, pk, p = self.local_private, self.peer_public, self.params.p
        base = pow(pk.P, sk.x, p) * pow(pk.Q, sk.y, p) % p
        value = pow(base, sk.w, p)
        self.outgoing_intermediate = value
        self.state = SessionState.INTERMEDIATE_COMPUTED
        return IntermediateValue(value)

    def finalize(self, incoming: IntermediateValue) -> int:
        self._require(SessionState.INTERMEDIATE_COMPUTED, "finalize")
        p, g = self.params.p, self.params.g
        if not 1 <= incoming.value <= p - 1:
            raise ValidationError(f"intermediate value {incoming.value} outside [1, p-1]")
        sk = self.local_private
        unblind = mod_inv(pow(g, sk.z, p), p)
        key = pow(incoming.value * unblind % p, sk.w, p)
        self.incoming_intermediate = incoming.value
        self.shared_key = key
        self.state = SessionState.ESTABLISHED
        if key == 1:
            self.degenerate = True
            warnings.warn("established key is 1", DegenerateKeyWarning, stacklevel=2)
        return key


def start_session(role: Role, private: PrivateKey, public: Optional[PublicKey] = None) -> Session:
    return Session(role, private, public)


def expected_shared_key(a: PrivateKey, b: PrivateKey) -> int:
    """Closed form g^(w_a w_b (x_a x_b + y_a y_b)) computed from both private keys."""
    params = a.params
    n = params.order
    exponent = a.w * b.w * (a.x * b.x + a.y * b.y) % n
    return pow(params.g, exponent, params.p)


def run_exchange(a: PrivateKey, b: PrivateKey) -> tuple[Session, Session]:
    """Drive two in-memory sessions to completion; returns (initiator, responder)."""
    alice = start_session(Role.INITIATOR, a)
    bob = start_session(Role.RESPONDER, b)
    alice.receive_peer_public(bob.local_public)
    bob.receive_peer_public(alice.local_public)
    msg_ab = alice.compute_intermediate()
    msg_ba = bob.compute_intermediate()
    alice.finalize(msg_ba)
    bob.finalize(msg_ab)
    return alice, bob


def ratchet_next_key(params: DomainParams, k0: int, k1: int) -> int:
    """Fresh key g^k0 * g^k1 mod p from two earlier shared keys."""
    p, g = params.p, params.g
    return pow(g, k0, p) * pow(g, k1, p) % p
