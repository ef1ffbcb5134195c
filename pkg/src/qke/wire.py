"""Byte- and text-level encodings.

Frame layout (all integers big-endian)::

    "QKE1" | type (1 octet) | payload_len (4 octets) | payload

The payload is a sequence of integer fields, each a 4-octet length L followed
by L octets of minimal big-endian magnitude (zero is L = 0).

Key text is an armored block of ``name = hex`` lines in a fixed order.
"""

from __future__ import annotations

import enum
import re
import struct
from dataclasses import dataclass
from typing import Union

from .errors import FormatError, IncompleteFrameError, ParameterError, UnsupportedMessageError, WidthError
from .keys import PrivateKey, PublicKey
from .modmath import DomainParams

MAGIC = b"QKE1"
HEADER = struct.Struct(">4sBI")
MAX_PAYLOAD = 1 << 20


class MessageType(enum.IntEnum):
    PARAMS_OFFER = 0x01
    PUBLIC_KEY = 0x02
    INTERMEDIATE = 0x03
    CLOSE = 0x04


FIELD_COUNTS = {
    MessageType.PARAMS_OFFER: 2,
    MessageType.PUBLIC_KEY: 2,
    MessageType.INTERMEDIATE: 1,
    MessageType.CLOSE: 0,
}


@dataclass(frozen=True)
class Frame:
    msg_type: MessageType
    fields: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "msg_type", MessageType(self.msg_type))
        object.__setattr__(self, "fields", tuple(self.fields))
        if len(self.fields) != FIELD_COUNTS[self.msg_type]:
            raise FormatError(f"{self.msg_type.name} carries {FIELD_COUNTS[self.msg_type]} fields, got {len(self.fields)}")
        if any(f < 0 for f in self.fields):
            raise FormatError("frame fields must be non-negative")


def params_offer(params: DomainParams) -> Frame:
    return Frame(MessageType.PARAMS_OFFER, (params.p, params.g))


def public_key_msg(pk: PublicKey) -> Frame:
    return Frame(MessageType.PUBLIC_KEY, (pk.P, pk.Q))


def intermediate_msg(value: int) -> Frame:
    return Frame(MessageType.INTERMEDIATE, (value,))


def close_msg() -> Frame:
    return Frame(MessageType.CLOSE)


def int_to_minimal(value: int) -> bytes:
    return value.to_bytes((value.bit_length() + 7) // 8, "big")


def encode_frame(frame: Frame) -> bytes:
    payload = bytearray()
    for value in frame.fields:
        raw = int_to_minimal(value)
        payload += struct.pack(">I", len(raw))
        payload += raw
    return HEADER.pack(MAGIC, frame.msg_type, len(payload)) + bytes(payload)


def _parse_fields(payload: bytes) -> list[int]:
    fields = []
    pos = 0
    while pos < len(payload):
        if pos + 4 > len(payload):
            raise FormatError("field length prefix runs past payload")
        (length,) = struct.unpack_from(">I", payload, pos)
        pos += 4
        if pos + length > len(payload):
            raise FormatError("field runs past payload")
        raw = payload[pos : pos + length]
        if raw[:1] == b"\x00":
            raise FormatError("non-minimal integer encoding (leading zero octet)")
        fields.append(int.from_bytes(raw, "big"))
        pos += length
    return fields


def split_frame(data: bytes) -> tuple[Frame, int]:
    """Decode the first frame in ``data``; return it with the octets consumed.

    Raises IncompleteFrameError if ``data`` ends before the frame does.
    """
    data = bytes(data)
    head = data[:4]
    if MAGIC[: len(head)] != head:
        raise FormatError(f"bad magic {head!r}")
    if len(data) < HEADER.size:
        raise IncompleteFrameError(f"need {HEADER.size} header octets, have {len(data)}")
    _, type_code, length = HEADER.unpack_from(data)
    try:
        msg_type = MessageType(type_code)
    except ValueError:
        raise UnsupportedMessageError(f"unknown message type 0x{type_code:02x}") from None
    if length > MAX_PAYLOAD:
        raise FormatError(f"payload length {length} exceeds limit")
    end = HEADER.size + length
    if len(data) < end:
        raise IncompleteFrameError(f"need {end} octets, have {len(data)}")
    fields = _parse_fields(data[HEADER.size : end])
    if len(fields) != FIELD_COUNTS[msg_type]:
        raise FormatError(f"{msg_type.name} carries {FIELD_COUNTS[msg_type]} fields, got {len(fields)}")
    return Frame(msg_type, tuple(fields)), end


def decode_frame(data: bytes) -> Frame:
    frame, used = split_frame(data)
    if used != len(data):
        raise FormatError(f"{len(data) - used} trailing octets after frame")
    return frame


class FrameDecoder:
    """Incremental decoder: feed arbitrary chunks, collect whole frames."""

    def __init__(self):
        self._buf = bytearray()

    def feed(self, chunk: bytes) -> list[Frame]:
        self._buf += chunk
        frames = []
        while self._buf:
            try:
                frame, used = split_frame(self._buf)
            except IncompleteFrameError:
                break
            frames.append(frame)
            del self._buf[:used]
        return frames

    @property
    def pending(self) -> int:
        """Octets buffered but not yet part of a complete frame."""
        return len(self._buf)


# ---------------------------------------------------------------------------
# fixed-width binary encoding
# ---------------------------------------------------------------------------

def fixed_width_encode(key: Union[PrivateKey, PublicKey, int], width: int) -> bytes:
    """Concatenate key components as ``width``-octet big-endian integers.

    Private keys give x|y|z, public keys P|Q, and a bare integer (a shared
    secret) a single field.
    """
    if isinstance(key, PrivateKey):
        parts = (key.x, key.y, key.z)
    elif isinstance(key, PublicKey):
        parts = (key.P, key.Q)
    else:
        parts = (key,)
    out = bytearray()
    for value in parts:
        if value < 0 or value >= 1 << (8 * width):
            raise WidthError(f"{value} does not fit in {width} octets")
        out += value.to_bytes(width, "big")
    return bytes(out)


def width_for(params: DomainParams) -> int:
    """Octets needed for any residue mod p."""
    return (params.bits + 7) // 8


# ---------------------------------------------------------------------------
# armored key text
# ---------------------------------------------------------------------------

_KINDS = {
    "PRIVATE KEY": ("p", "g", "x", "y", "z"),
    "PUBLIC KEY": ("p", "g", "P", "Q"),
    "PARAMETERS": ("p", "g"),
}
_BEGIN = re.compile(r"^-----BEGIN QKE (PRIVATE KEY|PUBLIC KEY|PARAMETERS)-----$")
_END = re.compile(r"^-----END QKE (PRIVATE KEY|PUBLIC KEY|PARAMETERS)-----$")
_LINE = re.compile(r"^([A-Za-z]+) = (0|[1-9a-f][0-9a-f]*)$")


class KeyTextError(FormatError):
    def __init__(self, message, line=None, field=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.field = field


def render_key_text(key: Union[PrivateKey, PublicKey, DomainParams]) -> str:
    if isinstance(key, PrivateKey):
        kind, values = "PRIVATE KEY", (key.params.p, key.params.g, key.x, key.y, key.z)
    elif isinstance(key, PublicKey):
        kind, values = "PUBLIC KEY", (key.params.p, key.params.g, key.P, key.Q)
    elif isinstance(key, DomainParams):
        kind, values = "PARAMETERS", (key.p, key.g)
    else:
        raise TypeError(f"cannot render {type(key).__name__}")
    lines = [f"-----BEGIN QKE {kind}-----"]
    lines += [f"{name} = {value:x}" for name, value in zip(_KINDS[kind], values)]
    lines.append(f"-----END QKE {kind}-----")
    return "\n".join(lines) + "\n"


def parse_key_text(text: str) -> Union[PrivateKey, PublicKey, DomainParams]:
    """Inverse of :func:`render_key_text`.

    Whitespace around the block and around each line is ignored; anything
    else out of place raises KeyTextError naming the line (1-based, counted
    within the stripped block).
    """
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or not lines[0]:
        raise KeyTextError("empty key text", line=1)
    begin = _BEGIN.match(lines[0])
    if not begin:
        raise KeyTextError(f"expected BEGIN line, got {lines[0]!r}", line=1)
    kind = begin.group(1)
    names = _KINDS[kind]
    values = {}
    for idx, name in enumerate(names):
        lineno = idx + 2
        if lineno > len(lines) or _END.match(lines[lineno - 1]):
            raise KeyTextError(f"missing field {name}", line=lineno, field=name)
        m = _LINE.match(lines[lineno - 1])
        if not m:
            raise KeyTextError(f"malformed line {lines[lineno - 1]!r} (expected '{name} = <lowercase hex>')", line=lineno, field=name)
        if m.group(1) != name:
            if m.group(1) in names:
                raise KeyTextError(f"field {m.group(1)} out of order, expected {name}", line=lineno, field=name)
            raise KeyTextError(f"unknown field {m.group(1)}, expected {name}", line=lineno, field=name)
        values[name] = int(m.group(2), 16)
    end_line = len(names) + 2
    if end_line > len(lines):
        raise KeyTextError("missing END line", line=end_line)
    end = _END.match(lines[end_line - 1])
    if not end:
        raise KeyTextError(f"expected END line, got {lines[end_line - 1]!r}", line=end_line)
    if end.group(1) != kind:
        raise KeyTextError(f"END {end.group(1)} does not match BEGIN {kind}", line=end_line)
    if end_line != len(lines):
        raise KeyTextError("unexpected content after END line", line=end_line + 1)
    try:
        params = DomainParams(values["p"], values["g"])
        if kind == "PARAMETERS":
            return params
        if kind == "PUBLIC KEY":
            return PublicKey(values["P"], values["Q"], params)
        return PrivateKey(values["x"], values["y"], values["z"], params)
    except ParameterError as exc:
        raise KeyTextError(f"invalid key material: {exc}") from exc
