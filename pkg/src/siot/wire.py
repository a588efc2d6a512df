"""Canonical wire encoding for protocol messages and transcripts.

Messages are canonical JSON (sorted keys, no whitespace, lowercase hex
for byte fields) with four fixed top-level fields: type, version,
session, body.  Anything that fails to parse, carries an unknown tag or
version, or violates field shape is rejected with a positioned decode
error; malformed input never passes silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DecodeError
from .util import canonical_json

VERSION = 1
SESSION_ID_LEN = 16

MESSAGE_TYPES = (
    "params",
    "coin-commit",
    "coin-reveal",
    "pk-sender",
    "pk-receiver",
    "ciphertexts",
    "baseline-setup",
    "baseline-response",
    "baseline-ciphertexts",
)

# required body keys per type; bodies may not carry extras
_BODY_KEYS = {
    "params": {"p", "la", "ea", "lb", "eb", "f", "e0", "pa", "qa", "pb", "qb"},
    "coin-commit": {"commit"},
    "coin-reveal": {"nonce"},
    "pk-sender": {"curve", "g", "h"},
    "pk-receiver": {"curve", "g", "h"},
    "ciphertexts": {"c0", "c1"},
    "baseline-setup": {"s", "t"},
    "baseline-response": {"r"},
    "baseline-ciphertexts": {"d0", "d1"},
}


@dataclass(frozen=True)
class WireMessage:
    type: str
    session: str
    body: dict
    version: int = VERSION


def _check_session(session: str) -> None:
    if (not isinstance(session, str) or len(session) != 2 * SESSION_ID_LEN
            or session != session.lower()):
        raise DecodeError(
            f"session id must be {2 * SESSION_ID_LEN} lowercase hex chars")
    try:
        bytes.fromhex(session)
    except ValueError as exc:
        raise DecodeError("session id is not hex") from exc


def encode(msg: WireMessage) -> bytes:
    if msg.type not in MESSAGE_TYPES:
        raise DecodeError(f"unknown message type {msg.type!r}")
    if msg.version != VERSION:
        raise DecodeError(f"unsupported version {msg.version}")
    _check_session(msg.session)
    if not isinstance(msg.body, dict):
        raise DecodeError("body must be an object")
    missing = _BODY_KEYS[msg.type] - set(msg.body)
    extra = set(msg.body) - _BODY_KEYS[msg.type]
    if missing or extra:
        raise DecodeError(f"body keys wrong for {msg.type}: "
                          f"missing {sorted(missing)}, extra {sorted(extra)}")
    return canonical_json({
        "body": msg.body,
        "session": msg.session,
        "type": msg.type,
        "version": msg.version,
    })


def decode(data: bytes) -> WireMessage:
    try:
        obj = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise DecodeError("message is not UTF-8", position=exc.start) from exc
    except json.JSONDecodeError as exc:
        raise DecodeError(f"bad JSON: {exc.msg}", position=exc.pos) from exc
    if not isinstance(obj, dict):
        raise DecodeError("top level must be an object")
    if set(obj) != {"body", "session", "type", "version"}:
        raise DecodeError("top-level keys must be exactly "
                          "body, session, type, version")
    if obj["type"] not in MESSAGE_TYPES:
        raise DecodeError(f"unknown message type {obj['type']!r}")
    if obj["version"] != VERSION:
        raise DecodeError(f"unsupported version {obj['version']!r}")
    _check_session(obj["session"])
    msg = WireMessage(obj["type"], obj["session"], obj["body"], obj["version"])
    encode(msg)   # re-run the structural checks shared with the writer
    return msg


@dataclass
class Transcript:
    """Ordered message log with direction markers, JSONL on disk."""

    entries: list = field(default_factory=list)

    def append(self, direction: str, msg: WireMessage) -> None:
        if direction not in ("sender->receiver", "receiver->sender"):
            raise ValueError(f"bad direction {direction!r}")
        self.entries.append((direction, msg))

    def to_bytes(self) -> bytes:
        lines = []
        for direction, msg in self.entries:
            lines.append(canonical_json({
                "dir": direction,
                "msg": json.loads(encode(msg)),
            }))
        return b"\n".join(lines) + (b"\n" if lines else b"")

    @classmethod
    def from_bytes(cls, data: bytes) -> Transcript:
        t = cls()
        for i, line in enumerate(data.splitlines()):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DecodeError(f"transcript line {i + 1}: {exc.msg}",
                                  position=exc.pos) from exc
            if not isinstance(obj, dict) or set(obj) != {"dir", "msg"}:
                raise DecodeError(f"transcript line {i + 1}: needs dir and msg")
            if obj["dir"] not in ("sender->receiver", "receiver->sender"):
                raise DecodeError(f"transcript line {i + 1}: bad direction")
            msg = decode(canonical_json(obj["msg"]))
            t.append(obj["dir"], msg)
        return t

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> Transcript:
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())
