"""Deterministic randomness, hash expansion, and the authenticated
stream cipher used for protocol payloads.

Every derived quantity is domain-separated, so two uses of the same
seed material for different purposes never collide.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import random

from .errors import DecryptionError

_TAG_PREFIX = b"siot/v1/"


def det_rng(seed) -> random.Random:
    """Seeded RNG; accepts int, bytes, hex str, or None (system entropy)."""
    if seed is None:
        return random.Random()
    if isinstance(seed, str):
        seed = bytes.fromhex(seed)
    if isinstance(seed, bytes):
        seed = int.from_bytes(hashlib.sha256(_TAG_PREFIX + b"rng" + seed).digest(),
                              "big")
    return random.Random(seed)


def sub_seed(seed, label: str):
    """Independent child seed for a labeled role; None stays None."""
    if seed is None:
        return None
    if isinstance(seed, int):
        seed = seed.to_bytes((seed.bit_length() + 7) // 8 or 1, "big")
    if isinstance(seed, str):
        seed = bytes.fromhex(seed)
    return hashlib.sha256(_TAG_PREFIX + b"subseed/" + label.encode() + b"/"
                          + seed).digest()


def tagged_hash(tag: str, *parts: bytes) -> bytes:
    h = hashlib.sha256()
    h.update(_TAG_PREFIX + tag.encode() + b"\x00")
    for part in parts:
        h.update(len(part).to_bytes(8, "big"))
        h.update(part)
    return h.digest()


def expand(tag: str, material: bytes, length: int) -> bytes:
    """Variable-length output from fixed material (keystreams, sampling)."""
    shake = hashlib.shake_256()
    shake.update(_TAG_PREFIX + tag.encode() + b"\x00" + material)
    return shake.digest(length)


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return bytes(x ^ y for x, y in zip(a, b))


_TAG_LEN = 32


def seal(key: bytes, plaintext: bytes) -> bytes:
    """Keystream XOR plus a MAC over the ciphertext."""
    stream = expand("cipher-stream", key, len(plaintext))
    body = xor_bytes(plaintext, stream)
    mac = hmac.new(tagged_hash("cipher-mac-key", key), body,
                   hashlib.sha256).digest()
    return body + mac


def open_sealed(key: bytes, ciphertext: bytes) -> bytes:
    if len(ciphertext) < _TAG_LEN:
        raise DecryptionError("ciphertext shorter than its tag")
    body, mac = ciphertext[:-_TAG_LEN], ciphertext[-_TAG_LEN:]
    want = hmac.new(tagged_hash("cipher-mac-key", key), body,
                    hashlib.sha256).digest()
    if not hmac.compare_digest(mac, want):
        raise DecryptionError("authentication tag mismatch")
    return xor_bytes(body, expand("cipher-stream", key, len(body)))


def canonical_json(obj) -> bytes:
    """Sorted keys, no whitespace; the only JSON writer the wire uses."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True).encode()
