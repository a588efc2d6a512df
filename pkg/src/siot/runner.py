"""Drives protocol sessions: in-process pairs, online endpoints over a
framed stream, and deterministic transcript replay/verification.

Restart semantics: a degenerate masked basis or kernel raises a restart
signal; the in-process runner then rebuilds both sessions and reruns,
continuing the same deterministic rng streams so the retry flips a
fresh coin.  Online endpoints surface the signal to the caller instead,
since restart negotiation is not part of the wire protocol.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .baseline_ot import (
    bo_decrypt,
    bo_encrypt,
    bo_receiver_round,
    bo_sender_keys,
    bo_sender_setup,
    default_group,
)
from .errors import DecodeError, ProtocolAbort, RestartRequired
from .sidh import (
    PublicParams,
    point_to_obj,
    public_from_obj,
    validate_public,
)
from .siot import NONCE_LEN, SiotSession, derive_mask_coeffs, encode_mask_points
from .transport import recv_frame, send_frame
from .util import det_rng, sub_seed, tagged_hash, xor_bytes
from .wire import Transcript, WireMessage, decode, encode

# the one legal message schedule; everything checks against it
_SCHEDULE = (
    ("coin-commit", "sender->receiver"),
    ("coin-commit", "receiver->sender"),
    ("coin-reveal", "sender->receiver"),
    ("coin-reveal", "receiver->sender"),
    ("pk-sender", "sender->receiver"),
    ("pk-receiver", "receiver->sender"),
    ("ciphertexts", "sender->receiver"),
)


@dataclass
class SessionConfig:
    params: PublicParams
    seed: object = None
    b: int | None = None
    x0: bytes | None = None
    x1: bytes | None = None
    hardened: bool = True
    session_id: bytes | None = None
    max_restarts: int = 4


def _session_id(config: SessionConfig, rng) -> bytes:
    if config.session_id is not None:
        return config.session_id
    return rng.randbytes(16)


def run_local(config: SessionConfig, offline_dir=None) -> dict:
    """Both parties in one process, fixed schedule, full transcript.

    Returns the receiver's output, the sender's two j-invariants, the
    transcript, and the restart count.
    """
    rng_s = det_rng(sub_seed(config.seed, "sender"))
    rng_r = det_rng(sub_seed(config.seed, "receiver"))
    rng_id = det_rng(sub_seed(config.seed, "session-id"))
    sid = _session_id(config, rng_id)

    restarts = 0
    while True:
        try:
            outcome = _pump_local(config, sid, rng_s, rng_r)
            break
        except RestartRequired:
            restarts += 1
            if restarts > config.max_restarts:
                raise
    outcome["restarts"] = restarts
    if offline_dir is not None:
        os.makedirs(offline_dir, exist_ok=True)
        path = os.path.join(offline_dir, "transcript.jsonl")
        outcome["transcript"].save(path)
        outcome["transcript_path"] = path
    return outcome


def _pump_local(config: SessionConfig, sid: bytes, rng_s, rng_r) -> dict:
    params = config.params
    sender = SiotSession(params, "sender", rng_s, sid,
                         x0=config.x0, x1=config.x1, hardened=config.hardened)
    receiver = SiotSession(params, "receiver", rng_r, sid,
                           b=config.b, hardened=config.hardened)
    transcript = Transcript()
    hexsid = sid.hex()

    def ship(mtype, direction, body):
        transcript.append(direction, WireMessage(mtype, hexsid, body))

    body = sender.produce_commit()
    ship("coin-commit", "sender->receiver", body)
    receiver.consume_commit(body)
    body = receiver.produce_commit()
    ship("coin-commit", "receiver->sender", body)
    sender.consume_commit(body)
    body = sender.produce_reveal()
    ship("coin-reveal", "sender->receiver", body)
    receiver.consume_reveal(body)
    body = receiver.produce_reveal()
    ship("coin-reveal", "receiver->sender", body)
    sender.consume_reveal(body)
    body = sender.produce_public()
    ship("pk-sender", "sender->receiver", body)
    receiver.consume_public(body)
    body = receiver.produce_public()
    ship("pk-receiver", "receiver->sender", body)
    sender.consume_public(body)
    body = sender.produce_ciphertexts()
    ship("ciphertexts", "sender->receiver", body)
    output = receiver.consume_ciphertexts(body)
    return {
        "output": output,
        "sender_j": sender.shared_j,
        "receiver_j": receiver.shared_j[0],
        "transcript": transcript,
        "sender_session": sender,
        "receiver_session": receiver,
        "session_id": sid,
    }


def run_session(role: str, config: SessionConfig, stream,
                transcript_path=None) -> dict:
    """One online endpoint over a framed stream.

    The sender picks the session id; the receiver adopts it from the
    first frame.  Every inbound frame must match the schedule's type and
    carry the session id, else the session aborts.
    """
    if role not in ("sender", "receiver"):
        raise ValueError("role must be sender or receiver")
    rng = det_rng(config.seed)
    transcript = Transcript()
    sid = _session_id(config, rng) if role == "sender" else None

    if role == "sender":
        session = SiotSession(config.params, "sender", rng, sid,
                              x0=config.x0, x1=config.x1,
                              hardened=config.hardened)
    else:
        session = None   # built after the session id is learned

    produce = {
        "coin-commit": lambda s: s.produce_commit(),
        "coin-reveal": lambda s: s.produce_reveal(),
        "pk-sender": lambda s: s.produce_public(),
        "pk-receiver": lambda s: s.produce_public(),
        "ciphertexts": lambda s: s.produce_ciphertexts(),
    }
    consume = {
        "coin-commit": lambda s, b: s.consume_commit(b),
        "coin-reveal": lambda s, b: s.consume_reveal(b),
        "pk-sender": lambda s, b: s.consume_public(b),
        "pk-receiver": lambda s, b: s.consume_public(b),
    }

    output = None
    my_direction = f"{role}->{'receiver' if role == 'sender' else 'sender'}"
    for mtype, direction in _SCHEDULE:
        if direction == my_direction:
            body = produce[mtype](session)
            msg = WireMessage(mtype, session.session_id.hex(), body)
            send_frame(stream, encode(msg))
            transcript.append(direction, msg)
        else:
            msg = decode(recv_frame(stream))
            if session is None:
                sid = bytes.fromhex(msg.session)
                session = SiotSession(config.params, "receiver", rng, sid,
                                      b=config.b, hardened=config.hardened)
            if msg.session != session.session_id.hex():
                raise ProtocolAbort("bad-message", "session id mismatch")
            if msg.type != mtype:
                raise ProtocolAbort(
                    "out-of-order",
                    f"expected {mtype}, peer sent {msg.type}")
            transcript.append(direction, msg)
            if mtype == "ciphertexts":
                output = session.consume_ciphertexts(msg.body)
            else:
                consume[mtype](session, msg.body)
    if transcript_path is not None:
        transcript.save(transcript_path)
    return {
        "output": output,
        "session": session,
        "transcript": transcript,
        "session_id": session.session_id,
    }


def verify_transcript(transcript: Transcript, params: PublicParams) -> dict:
    """Deterministic replay of every public validation over a transcript.

    Checks schedule, session id consistency, coin-flip binding, public
    key validity (including the masked pair's basis certificate), the
    mask derivation, and ciphertext shape.  Secrets are not needed: all
    verdicts are functions of public messages.
    """
    checks = []

    def check(name, ok, detail=""):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})
        return ok

    entries = transcript.entries
    order_ok = len(entries) == len(_SCHEDULE) and all(
        (m.type, d) == s for (d, m), s in zip(entries, _SCHEDULE))
    check("message-order", order_ok,
          "seven messages in the fixed schedule")
    if not order_ok:
        return {"ok": False, "checks": checks}

    sids = {m.session for _, m in entries}
    check("session-id-consistent", len(sids) == 1, f"ids seen: {sorted(sids)}")

    commits = [entries[0][1].body, entries[1][1].body]
    reveals = [entries[2][1].body, entries[3][1].body]
    nonces = []
    bind_ok = True
    for c, r in zip(commits, reveals):
        nonce = bytes.fromhex(r["nonce"])
        nonces.append(nonce)
        if tagged_hash("coinflip-commit", nonce) != bytes.fromhex(c["commit"]):
            bind_ok = False
    check("coinflip-binding", bind_ok, "each reveal opens its commitment")
    check("nonce-length", all(len(n) == NONCE_LEN for n in nonces), "")

    w = xor_bytes(nonces[0], nonces[1])
    coeffs = derive_mask_coeffs(w, params)
    try:
        coeffs.check(params, hardened=True)
        constraints_ok, detail = True, (
            f"alpha={coeffs.alpha} beta={coeffs.beta} "
            f"gamma={coeffs.gamma} delta={coeffs.delta}")
    except ValueError as exc:
        constraints_ok, detail = False, str(exc)
    check("mask-constraints", constraints_ok, detail)

    ok_pk = True
    pks = {}
    for idx, producer in ((4, "A"), (5, "B")):
        try:
            pub = public_from_obj(params.ctx, entries[idx][1].body)
            validate_public(params, producer, pub)
            pks[producer] = pub
        except (DecodeError, ProtocolAbort) as exc:
            ok_pk = False
            check(f"public-key-{producer}", False, str(exc))
    if ok_pk:
        check("public-keys", True, "both keys pass torsion validation")
        from .pairing import weil_pairing

        n = params.n("A")
        pub = pks["B"]
        zeta = weil_pairing(pub.curve, pub.G, pub.H, n)
        check("masked-pair-basis",
              not (zeta ** (n // params.ell_a)).is_one(),
              "receiver pair is a certified torsion basis")
        mask = encode_mask_points(coeffs, pub.curve, pub.G, pub.H, params)
        check("mask-points-derivable", True,
              f"U={point_to_obj(mask.U)} V={point_to_obj(mask.V)}")

    cts = entries[6][1].body
    same_len = len(cts["c0"]) == len(cts["c1"])
    check("ciphertext-shape", same_len and len(cts["c0"]) % 2 == 0,
          "two equal-length hex ciphertexts")

    return {"ok": all(c["ok"] for c in checks), "checks": checks}


# -- baseline OT over the same plumbing ---------------------------------

def run_baseline_local(b: int, m0: bytes, m1: bytes, seed=None,
                       group=None) -> dict:
    """In-process baseline OT session with a wire-shaped transcript."""
    ctx = group if group is not None else default_group()
    rng_s = det_rng(sub_seed(seed, "bo-sender"))
    rng_r = det_rng(sub_seed(seed, "bo-receiver"))
    sid = det_rng(sub_seed(seed, "bo-session")).randbytes(16).hex()

    y, S, T = bo_sender_setup(ctx, rng_s)
    transcript = Transcript()
    transcript.append("sender->receiver", WireMessage("baseline-setup", sid, {
        "s": point_to_obj(S), "t": point_to_obj(T)}))
    x, R, k_b = bo_receiver_round(ctx, S, b, rng_r)
    transcript.append("receiver->sender", WireMessage("baseline-response", sid, {
        "r": point_to_obj(R)}))
    k0, k1 = bo_sender_keys(ctx, y, S, T, R)
    d0, d1 = bo_encrypt(k0, m0), bo_encrypt(k1, m1)
    transcript.append("sender->receiver",
                      WireMessage("baseline-ciphertexts", sid, {
                          "d0": d0.hex(), "d1": d1.hex()}))
    delivered = bo_decrypt(k_b, d1 if b else d0)
    return {
        "output": delivered,
        "transcript": transcript,
        "keys": (k0, k1),
        "receiver_key": k_b,
    }
