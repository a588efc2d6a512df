"""The 1-out-of-2 oblivious transfer built on the isogeny exchange.

Flow, in fixed message order: both parties commit to coin-flip nonces,
both reveal, the shared string w is hashed to mask coefficients
(alpha, beta, gamma, delta), the sender ships its plain public key, the
receiver ships its public key with the basis images masked by
(U, V) = (alpha*G + beta*H, -(alpha/beta)*U) when its choice bit is 1,
and the sender answers with two ciphertexts, one per derived
j-invariant.  The receiver can open exactly the one indexed by its bit.

The coefficient constraints enforced here make the two receiver
branches pairing-indistinguishable to the sender and leave the sender's
two j-invariants distinct, so neither party learns the other's input.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .curve import EllipticCurve, Point
from .errors import (
    DecryptionError,
    InvalidPointError,
    ProtocolAbort,
    RestartRequired,
)
from .field import Fp2
from .isogeny import isogeny_chain, kernel_generator
from .pairing import weil_pairing
from .sidh import (
    PublicParams,
    SidhKeyPair,
    SidhPublic,
    keygen,
    public_to_obj,
    validate_public,
)
from .util import canonical_json, expand, open_sealed, seal, tagged_hash, xor_bytes

NONCE_LEN = 32


@dataclass
class CoinFlip:
    """One party's view of the commit-reveal coin flip."""

    local_nonce: bytes
    commitment: bytes
    remote_commitment: bytes | None = None
    remote_nonce: bytes | None = None
    w: bytes | None = None


def coinflip_commit(rng) -> CoinFlip:
    nonce = rng.randbytes(NONCE_LEN)
    return CoinFlip(nonce, tagged_hash("coinflip-commit", nonce))


def coinflip_reveal(cf: CoinFlip, remote_nonce: bytes) -> bytes:
    """Check the remote opening against its commitment and combine."""
    if cf.remote_commitment is None:
        raise ProtocolAbort("out-of-order", "reveal before remote commitment")
    if tagged_hash("coinflip-commit", remote_nonce) != cf.remote_commitment:
        raise ProtocolAbort("coinflip-cheat",
                            "revealed nonce does not open the commitment")
    cf.remote_nonce = remote_nonce
    cf.w = xor_bytes(cf.local_nonce, remote_nonce)
    return cf.w


@dataclass(frozen=True)
class MaskCoefficients:
    """Scalars (alpha, beta, gamma, delta) mod lA^eA derived from w.

    Constraints: delta = -alpha and alpha^2 + beta*gamma = 0, so the
    sender's pairing probe is blind to the choice bit; beta is a unit
    and the quadratic gamma*r^2 + (alpha-delta)*r - beta has no root
    mod lA, so a dishonest receiver cannot collapse the sender's two
    kernels; and (in the hardened family) alpha is a multiple of
    lA^ceil(eA/2), which kills the order-2 pairing leak as well.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int
    w: bytes

    def quadratic_root_free(self, ell: int) -> bool:
        # exhaustive over Z/ell; ell is tiny in every supported set
        return all(
            (self.gamma * r * r + (self.alpha - self.delta) * r - self.beta)
            % ell != 0
            for r in range(ell))

    def check(self, params: PublicParams, hardened: bool = True) -> None:
        n = params.n("A")
        ell, e = params.ell_a, params.e_a
        if self.beta % ell == 0:
            raise ValueError("beta must be a unit")
        if (self.delta + self.alpha) % n != 0:
            raise ValueError("delta must equal -alpha")
        if (self.alpha * self.alpha + self.beta * self.gamma) % n != 0:
            raise ValueError("alpha^2 + beta*gamma must vanish")
        if not self.quadratic_root_free(ell):
            raise ValueError("kernel-collapse quadratic has a root")
        if hardened and self.alpha % ell ** ((e + 1) // 2) != 0:
            raise ValueError("alpha outside the hardened family")


@dataclass(frozen=True)
class MaskPoints:
    U: Point
    V: Point


def params_fingerprint(params: PublicParams) -> bytes:
    from .sidh import params_to_obj

    return tagged_hash("params-fp", canonical_json(params_to_obj(params)))


def derive_mask_coeffs(w: bytes, params: PublicParams,
                       hardened: bool = True) -> MaskCoefficients:
    """Hash-expand w into coefficients satisfying every mask constraint.

    Deterministic: both parties compute the identical tuple.  Rejection
    sampling over a counter; admissible (alpha0, beta) pairs are dense,
    so this terminates after a handful of draws.
    """
    n = params.n("A")
    ell, e = params.ell_a, params.e_a
    lift = ell ** ((e + 1) // 2) if hardened else 1
    fp = params_fingerprint(params)
    width = max(32, 2 * ((n.bit_length() + 7) // 8) + 16)
    ctr = 0
    while True:
        material = w + fp + struct.pack("!IB", ctr, 1 if hardened else 0)
        stream = expand("mask-coeffs", material, 2 * width)
        alpha0 = int.from_bytes(stream[:width], "big") % n
        beta = int.from_bytes(stream[width:], "big") % n
        ctr += 1
        if beta % ell == 0:
            continue
        alpha = alpha0 * lift % n
        delta = -alpha % n
        gamma = -alpha * alpha * pow(beta, -1, n) % n
        coeffs = MaskCoefficients(alpha, beta, gamma, delta, w)
        if not coeffs.quadratic_root_free(ell):
            continue
        coeffs.check(params, hardened)
        return coeffs


def encode_mask_points(coeffs: MaskCoefficients, curve: EllipticCurve,
                       G: Point, H: Point, params: PublicParams) -> MaskPoints:
    """(U, V) = (alpha*G + beta*H, gamma*G + delta*H) in the lA^eA-torsion.

    Under the protocol constraints V collapses to -(alpha/beta)*U, and
    feeding the receiver's masked pair instead of its true pair yields
    the same (U, V): the mask family is a fixed point of its own
    re-derivation, which is what lets the sender reconstruct the mask
    without learning the bit.
    """
    n = params.n("A")
    for pt in (G, H):
        curve.check_point(pt)
        if not curve.mul(n, pt).infinity:
            raise InvalidPointError(f"mask basis point is not {n}-torsion")
    U = curve.add(curve.mul(coeffs.alpha, G), curve.mul(coeffs.beta, H))
    V = curve.add(curve.mul(coeffs.gamma, G), curve.mul(coeffs.delta, H))
    return MaskPoints(U, V)


# -- authenticated payload encryption ----------------------------------

def kdf_enc(j: Fp2, plaintext: bytes, transcript_hash: bytes = b"") -> bytes:
    key = tagged_hash("payload-key", j.encode(), transcript_hash)
    return seal(key, plaintext)


def kdf_dec(j: Fp2, ciphertext: bytes, transcript_hash: bytes = b"") -> bytes:
    key = tagged_hash("payload-key", j.encode(), transcript_hash)
    return open_sealed(key, ciphertext)


def _pack_input(x: bytes, width: int) -> bytes:
    if len(x) > width:
        raise ValueError("input longer than declared width")
    return struct.pack("!I", len(x)) + x + b"\x00" * (width - len(x))


def _unpack_input(data: bytes) -> bytes:
    if len(data) < 4:
        raise DecryptionError("plaintext too short to carry its length")
    (n,) = struct.unpack("!I", data[:4])
    if n > len(data) - 4:
        raise DecryptionError("declared length exceeds payload")
    return data[4:4 + n]


# -- session state machine ---------------------------------------------

_SENDER_PHASES = ("commit", "commit-ack", "reveal", "reveal-ack",
                  "send-pk", "recv-pk", "send-ct", "done")
_RECEIVER_PHASES = ("commit-ack", "commit", "reveal-ack", "reveal",
                    "recv-pk", "send-pk", "recv-ct", "done")


class SiotSession:
    """Single-owner protocol endpoint; methods must follow message order.

    The sender is the A side (it holds x0, x1), the receiver the B side
    (it holds the bit b).  Any out-of-order call aborts; a degenerate
    masked basis or kernel, or a collision between the sender's two
    branch j-invariants, raises a restart signal, on which the caller
    reruns the whole protocol so a fresh w is flipped.
    """

    def __init__(self, params: PublicParams, role: str, rng,
                 session_id: bytes = b"\x00" * 16,
                 x0: bytes | None = None, x1: bytes | None = None,
                 b: int | None = None, hardened: bool = True):
        if role not in ("sender", "receiver"):
            raise ValueError("role must be sender or receiver")
        if role == "sender":
            if x0 is None or x1 is None:
                raise ValueError("sender needs both input strings")
            if b is not None:
                raise ValueError("sender holds no choice bit")
        else:
            if b not in (0, 1):
                raise ValueError("receiver needs a choice bit in {0, 1}")
            if x0 is not None or x1 is not None:
                raise ValueError("receiver holds no input strings")
        if len(session_id) != 16:
            raise ValueError("session id must be 16 bytes")
        self.params = params
        self.role = role
        self.rng = rng
        self.session_id = session_id
        self.x0, self.x1, self.b = x0, x1, b
        self.hardened = hardened
        self.coin = coinflip_commit(rng)
        self.keypair: SidhKeyPair = keygen(
            params, "A" if role == "sender" else "B", rng)
        self.coeffs: MaskCoefficients | None = None
        self.their_public: SidhPublic | None = None
        self.masked_public: SidhPublic | None = None
        self.ciphertexts: tuple[bytes, bytes] | None = None
        self.shared_j: tuple | None = None
        self.output: bytes | None = None
        self.transcript: list = []
        self._phases = list(_SENDER_PHASES if role == "sender"
                            else _RECEIVER_PHASES)
        self._cursor = 0

    # phase bookkeeping

    def _expect(self, phase: str) -> None:
        if self._cursor >= len(self._phases) or \
                self._phases[self._cursor] != phase:
            want = (self._phases[self._cursor]
                    if self._cursor < len(self._phases) else "done")
            raise ProtocolAbort(
                "out-of-order", f"phase {phase} requested, expected {want}")
        self._cursor += 1

    def _log(self, mtype: str, body: dict) -> None:
        self.transcript.append((mtype, body))

    # coin flip

    def produce_commit(self) -> dict:
        self._expect("commit")
        body = {"commit": self.coin.commitment.hex()}
        self._log("coin-commit", body)
        return body

    def consume_commit(self, body: dict) -> None:
        self._expect("commit-ack")
        self.coin.remote_commitment = _hex_field(body, "commit", NONCE_LEN)
        self._log("coin-commit", body)

    def produce_reveal(self) -> dict:
        self._expect("reveal")
        body = {"nonce": self.coin.local_nonce.hex()}
        self._log("coin-reveal", body)
        return body

    def consume_reveal(self, body: dict) -> None:
        self._expect("reveal-ack")
        w = coinflip_reveal(self.coin, _hex_field(body, "nonce", NONCE_LEN))
        self.coeffs = derive_mask_coeffs(w, self.params, self.hardened)
        self._log("coin-reveal", body)

    # public keys

    def produce_public(self) -> dict:
        self._expect("send-pk")
        if self.role == "sender":
            body = public_to_obj(self.keypair.public)
            self._log("pk-sender", body)
            return body
        pub = self.keypair.public
        mask = encode_mask_points(self.coeffs, pub.curve, pub.G, pub.H,
                                  self.params)
        if self.b == 1:
            masked = SidhPublic(pub.curve, pub.curve.sub(pub.G, mask.U),
                                pub.curve.sub(pub.H, mask.V))
        else:
            masked = pub
        n = self.params.n("A")
        zeta = weil_pairing(masked.curve, masked.G, masked.H, n)
        if (zeta ** (n // self.params.ell_a)).is_one():
            raise RestartRequired("masked pair is not a torsion basis")
        self.masked_public = masked
        body = public_to_obj(masked)
        self._log("pk-receiver", body)
        return body

    def consume_public(self, body: dict) -> None:
        self._expect("recv-pk")
        producer = "A" if self.role == "receiver" else "B"
        from .sidh import public_from_obj

        pub = public_from_obj(self.params.ctx, body)
        validate_public(self.params, producer, pub)
        self.their_public = pub
        self._log("pk-sender" if producer == "A" else "pk-receiver", body)
        if self.role == "sender":
            self._derive_ciphertext_keys()

    def _transcript_hash(self) -> bytes:
        pk_bodies = [body for mtype, body in self.transcript
                     if mtype in ("pk-sender", "pk-receiver")]
        if len(pk_bodies) != 2:
            raise ProtocolAbort("out-of-order", "transcript missing keys")
        return tagged_hash("transcript", self.session_id,
                           *(canonical_json(b) for b in pk_bodies))

    def _derive_ciphertext_keys(self) -> None:
        """Sender: re-derive the mask from the received pair, split into
        the two candidate kernels, and encrypt one input under each j."""
        pub = self.their_public
        params = self.params
        ell, e = params.ell_a, params.e_a
        n = params.n("A")
        mask = encode_mask_points(self.coeffs, pub.curve, pub.G, pub.H, params)
        th = self._transcript_hash()
        width = max(len(self.x0), len(self.x1))
        cts = []
        js = []
        for i in (0, 1):
            G = pub.curve.add(pub.G, pub.curve.mul(i, mask.U))
            H = pub.curve.add(pub.H, pub.curve.mul(i, mask.V))
            K = kernel_generator(pub.curve, G, self.keypair.r, H)
            if pub.curve.mul(n // ell, K).infinity:
                raise RestartRequired(f"branch {i} kernel is order-degenerate")
            chain = isogeny_chain(pub.curve, K, ell, e)
            j = chain.codomain.j_invariant()
            js.append(j)
            x = self.x0 if i == 0 else self.x1
            cts.append(kdf_enc(j, _pack_input(x, width), th))
        if js[0] == js[1]:
            # distinct kernels can still land on the same j in a desk-scale
            # isogeny graph; a collision would open both branches, so flip
            # fresh coins instead of sending
            raise RestartRequired("branch j-invariants collided")
        self.shared_j = tuple(js)
        self.ciphertexts = (cts[0], cts[1])

    # ciphertexts

    def produce_ciphertexts(self) -> dict:
        self._expect("send-ct")
        body = {"c0": self.ciphertexts[0].hex(), "c1": self.ciphertexts[1].hex()}
        self._log("ciphertexts", body)
        return body

    def consume_ciphertexts(self, body: dict) -> bytes:
        self._expect("recv-ct")
        c0 = _bytes_field(body, "c0")
        c1 = _bytes_field(body, "c1")
        if len(c0) != len(c1):
            raise ProtocolAbort("bad-message", "ciphertext lengths differ")
        self._log("ciphertexts", body)
        params = self.params
        pub = self.their_public
        K = kernel_generator(pub.curve, pub.G, self.keypair.r, pub.H)
        chain = isogeny_chain(pub.curve, K, params.ell_b, params.e_b)
        j = chain.codomain.j_invariant()
        self.shared_j = (j,)
        th = self._transcript_hash()
        try:
            plain = kdf_dec(j, c1 if self.b else c0, th)
        except DecryptionError as exc:
            raise ProtocolAbort("decrypt-fail", str(exc)) from exc
        self.output = _unpack_input(plain)
        return self.output

    @property
    def done(self) -> bool:
        return (self._cursor < len(self._phases)
                and self._phases[self._cursor] == "done")


def _hex_field(body: dict, key: str, length: int) -> bytes:
    v = body.get(key)
    if not isinstance(v, str) or len(v) != 2 * length or v != v.lower():
        raise ProtocolAbort("bad-message",
                            f"field {key} must be {2 * length} hex chars")
    try:
        return bytes.fromhex(v)
    except ValueError as exc:
        raise ProtocolAbort("bad-message", f"field {key} not hex") from exc


def _bytes_field(body: dict, key: str) -> bytes:
    v = body.get(key)
    if not isinstance(v, str) or len(v) % 2 or v != v.lower():
        raise ProtocolAbort("bad-message", f"field {key} must be hex")
    try:
        return bytes.fromhex(v)
    except ValueError as exc:
        raise ProtocolAbort("bad-message", f"field {key} not hex") from exc
