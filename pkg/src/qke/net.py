"""Run the framed exchange over a connected stream socket.

Message order::

    initiator -> ParamsOffer{p, g}
    responder -> PublicKey{P, Q}
    initiator -> PublicKey{P, Q}
    both      -> Intermediate{value}   (each as soon as it can compute it)
    both      -> Close{}

A handler owns its socket exclusively; distinct connections are independent.
"""

from __future__ import annotations

import socket
from typing import Optional

from .errors import QKEError
from .keys import PrivateKey, PublicKey
from .modmath import DomainParams
from .protocol import IntermediateValue, Role, Session, start_session
from .wire import (
    Frame,
    FrameDecoder,
    MessageType,
    close_msg,
    encode_frame,
    intermediate_msg,
    params_offer,
    public_key_msg,
)


class ProtocolViolation(QKEError):
    """The peer sent something the exchange does not allow."""


class FramedStream:
    def __init__(self, sock: socket.socket):
        self.sock = sock
        self._decoder = FrameDecoder()
        self._ready: list[Frame] = []

    def send(self, frame: Frame):
        self.sock.sendall(encode_frame(frame))

    def recv(self, expected: MessageType) -> Frame:
        while not self._ready:
            chunk = self.sock.recv(4096)
            if not chunk:
                state = "mid-frame" if self._decoder.pending else "before " + expected.name
                raise ProtocolViolation(f"peer closed the connection {state}")
            try:
                self._ready.extend(self._decoder.feed(chunk))
            except QKEError as exc:
                raise ProtocolViolation(f"undecodable frame: {exc}") from exc
        frame = self._ready.pop(0)
        if frame.msg_type != expected:
            raise ProtocolViolation(f"expected {expected.name}, got {frame.msg_type.name}")
        return frame


def _peer_key(frame: Frame, params: DomainParams) -> PublicKey:
    return PublicKey(frame.fields[0], frame.fields[1], params)


def _finish(stream: FramedStream, session: Session) -> Session:
    frame = stream.recv(MessageType.INTERMEDIATE)
    try:
        session.finalize(IntermediateValue(frame.fields[0]))
    except QKEError as exc:
        raise ProtocolViolation(str(exc)) from exc
    stream.send(close_msg())
    stream.recv(MessageType.CLOSE)
    return session


def _accept_peer_key(session: Session, frame: Frame):
    try:
        session.receive_peer_public(_peer_key(frame, session.params))
    except QKEError as exc:
        raise ProtocolViolation(str(exc)) from exc


def run_initiator(sock: socket.socket, key: PrivateKey) -> Session:
    stream = FramedStream(sock)
    session = start_session(Role.INITIATOR, key)
    stream.send(params_offer(key.params))
    _accept_peer_key(session, stream.recv(MessageType.PUBLIC_KEY))
    stream.send(public_key_msg(session.local_public))
    stream.send(intermediate_msg(session.compute_intermediate().value))
    return _finish(stream, session)


def run_responder(sock: socket.socket, key: PrivateKey, expect: Optional[DomainParams] = None) -> Session:
    """Serve one exchange.  Offers whose p is not a safe prime (or whose g is
    not a primitive root, or that differ from our key's group) are refused."""
    stream = FramedStream(sock)
    session = start_session(Role.RESPONDER, key)
    offer = stream.recv(MessageType.PARAMS_OFFER)
    try:
        offered = DomainParams(*offer.fields)
    except QKEError as exc:
        raise ProtocolViolation(f"rejected parameter offer: {exc}") from exc
    if offered != key.params:
        raise ProtocolViolation("offered group differs from the local key's group")
    if expect is not None and offered != expect:
        raise ProtocolViolation("offered group differs from the expected parameters")
    stream.send(public_key_msg(session.local_public))
    _accept_peer_key(session, stream.recv(MessageType.PUBLIC_KEY))
    stream.send(intermediate_msg(session.compute_intermediate().value))
    return _finish(stream, session)
