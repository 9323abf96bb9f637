"""Binary framing for coordinator/worker messages.

Frame layout (all integers little-endian)::

    magic        4 bytes  b"MSCN"
    type         u8       HELLO=1 ASSIGN=2 COUNT=3 ERROR=4 BYE=5
    payload_len  u64
    payload      payload_len bytes

Strings are a u32 byte length followed by UTF-8; byte blobs are a u64
length followed by the raw bytes.

ASSIGN payload::

    algo u8 (0=ac, 1=wm) | source u8 (0=path, 1=inline) | rank u32 | size u32
    n u64 | start u64 | stop u64 | path str | data blob
    m u32 | d u32 | patterns d*m bytes | B u8 | B_prime u8 | bitshift u8
    worker_count u32 | tile_size u64 (0 = untiled)

COUNT payload: ``count u64`` then ``load, preprocess, search, reduce`` as
f64 seconds. HELLO and ERROR carry one string; BYE is empty.
"""

from __future__ import annotations

import socket
import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import Union

MAGIC = b"MSCN"
HEADER = struct.Struct("<4sBQ")
MAX_PAYLOAD = 1 << 40


class MsgType(IntEnum):
    HELLO = 1
    ASSIGN = 2
    COUNT = 3
    ERROR = 4
    BYE = 5


class ProtocolError(Exception):
    pass


ALGO_CODES = {"ac": 0, "wm": 1}
SOURCE_CODES = {"path": 0, "inline": 1}


@dataclass(frozen=True)
class Hello:
    info: str = ""


@dataclass(frozen=True)
class Assign:
    algo: str
    source: str
    rank: int
    size: int
    n: int
    start: int
    stop: int
    patterns: tuple[bytes, ...]
    path: str = ""
    data: bytes = b""
    B: int = 3
    B_prime: int = 2
    bitshift: int = 2
    worker_count: int = 1
    tile_size: int = 0


@dataclass(frozen=True)
class Count:
    count: int
    load: float = 0.0
    preprocess: float = 0.0
    search: float = 0.0
    reduce: float = 0.0


@dataclass(frozen=True)
class Error:
    message: str


@dataclass(frozen=True)
class Bye:
    pass


Message = Union[Hello, Assign, Count, Error, Bye]


class _Reader:
    def __init__(self, buf: bytes):
        self.buf = memoryview(buf)
        self.pos = 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.buf):
            raise ProtocolError("payload truncated")
        out = self.buf[self.pos:self.pos + k].tobytes()
        self.pos += k
        return out

    def unpack(self, fmt: str):
        s = struct.Struct("<" + fmt)
        return s.unpack(self.take(s.size))

    def string(self) -> str:
        (k,) = self.unpack("I")
        try:
            return self.take(k).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProtocolError(f"invalid UTF-8 string: {exc}") from None

    def blob(self) -> bytes:
        (k,) = self.unpack("Q")
        return self.take(k)

    def done(self):
        if self.pos != len(self.buf):
            raise ProtocolError(f"{len(self.buf) - self.pos} trailing payload bytes")


def _string(s: str) -> bytes:
    b = s.encode("utf-8")
    return struct.pack("<I", len(b)) + b


def _blob(b: bytes) -> bytes:
    return struct.pack("<Q", len(b)) + b


def _encode_assign(a: Assign) -> bytes:
    m = len(a.patterns[0]) if a.patterns else 0
    if any(len(p) != m for p in a.patterns):
        raise ValueError("ASSIGN patterns must share one length")
    return b"".join([
        struct.pack("<BBIIQQQ", ALGO_CODES[a.algo], SOURCE_CODES[a.source], a.rank, a.size,
                    a.n, a.start, a.stop),
        _string(a.path),
        _blob(a.data),
        struct.pack("<II", m, len(a.patterns)),
        *a.patterns,
        struct.pack("<BBBIQ", a.B, a.B_prime, a.bitshift, a.worker_count, a.tile_size),
    ])


def _decode_assign(r: _Reader) -> Assign:
    algo, source, rank, size, n, start, stop = r.unpack("BBIIQQQ")
    algos = {v: k for k, v in ALGO_CODES.items()}
    sources = {v: k for k, v in SOURCE_CODES.items()}
    if algo not in algos or source not in sources:
        raise ProtocolError(f"bad algorithm {algo} or source {source} code")
    path = r.string()
    data = r.blob()
    m, d = r.unpack("II")
    patterns = tuple(r.take(m) for _ in range(d))
    B, Bp, bs, workers, tile = r.unpack("BBBIQ")
    return Assign(algos[algo], sources[source], rank, size, n, start, stop, patterns, path,
                  data, B, Bp, bs, workers, tile)


def encode_payload(msg: Message) -> tuple[MsgType, bytes]:
    if isinstance(msg, Hello):
        return MsgType.HELLO, _string(msg.info)
    if isinstance(msg, Assign):
        return MsgType.ASSIGN, _encode_assign(msg)
    if isinstance(msg, Count):
        return MsgType.COUNT, struct.pack("<Qdddd", msg.count, msg.load, msg.preprocess,
                                          msg.search, msg.reduce)
    if isinstance(msg, Error):
        return MsgType.ERROR, _string(msg.message)
    if isinstance(msg, Bye):
        return MsgType.BYE, b""
    raise TypeError(f"not a protocol message: {msg!r}")


def encode(msg: Message) -> bytes:
    kind, payload = encode_payload(msg)
    return HEADER.pack(MAGIC, kind, len(payload)) + payload


def decode_payload(kind: int, payload: bytes) -> Message:
    r = _Reader(payload)
    if kind == MsgType.HELLO:
        msg = Hello(r.string())
    elif kind == MsgType.ASSIGN:
        msg = _decode_assign(r)
    elif kind == MsgType.COUNT:
        msg = Count(*r.unpack("Qdddd"))
    elif kind == MsgType.ERROR:
        msg = Error(r.string())
    elif kind == MsgType.BYE:
        msg = Bye()
    else:
        raise ProtocolError(f"unknown message type {kind}")
    r.done()
    return msg


def parse_header(header: bytes) -> tuple[int, int]:
    magic, kind, length = HEADER.unpack(header)
    if magic != MAGIC:
        raise ProtocolError(f"bad magic {magic!r}")
    if kind not in MsgType._value2member_map_:
        raise ProtocolError(f"unknown message type {kind}")
    if length > MAX_PAYLOAD:
        raise ProtocolError(f"payload length {length} exceeds limit")
    return kind, length


def decode(frame: bytes) -> Message:
    """Decode exactly one complete frame."""
    if len(frame) < HEADER.size:
        raise ProtocolError("frame shorter than header")
    kind, length = parse_header(frame[:HEADER.size])
    if len(frame) != HEADER.size + length:
        raise ProtocolError(f"frame length {len(frame)} != header + {length}")
    return decode_payload(kind, frame[HEADER.size:])


def _recv_exact(sock: socket.socket, k: int) -> bytes:
    buf = bytearray()
    while len(buf) < k:
        chunk = sock.recv(min(k - len(buf), 1 << 20))
        if not chunk:
            raise ConnectionError("connection closed mid-message")
        buf += chunk
    return bytes(buf)


def send_message(sock: socket.socket, msg: Message) -> None:
    sock.sendall(encode(msg))


def recv_message(sock: socket.socket) -> Message | None:
    """Read one message; ``None`` on a clean close between messages."""
    first = sock.recv(HEADER.size)
    if not first:
        return None
    header = first + _recv_exact(sock, HEADER.size - len(first))
    kind, length = parse_header(header)
    return decode_payload(kind, _recv_exact(sock, length))
