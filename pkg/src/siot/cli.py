"""Command-line interface: parameter generation, key generation, online
and local protocol runs, transcript verification, the adversarial
probes, and the baseline OT.

Exit codes: 0 success, 2 protocol abort (including verification
failures), 3 transport error, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import (
    brute_force_secret,
    dishonest_bob_probe,
    distinguisher_fixture,
    distinguisher_scan,
)
from .errors import (
    DecodeError,
    ProtocolAbort,
    RestartRequired,
    SiotError,
    TransportError,
)
from .runner import (
    SessionConfig,
    run_baseline_local,
    run_local,
    run_session,
    verify_transcript,
)
from .sidh import (
    gen_params,
    keygen,
    params_from_obj,
    params_to_obj,
    preset,
    public_to_obj,
)
from .transport import connect, serve_one
from .util import det_rng
from .wire import Transcript


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="siot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_params_opts(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--preset", choices=("p431", "p2591"),
                       help="named parameter set")
        g.add_argument("--params", metavar="FILE",
                       help="parameter JSON produced by gen-params")

    def add_net_opts(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--listen", metavar="ADDR", help="host:port to bind")
        g.add_argument("--connect", metavar="ADDR", help="host:port to dial")

    sp = sub.add_parser("gen-params", help="search and write parameters")
    sp.add_argument("--la", type=int, required=True)
    sp.add_argument("--ea", type=int, required=True)
    sp.add_argument("--lb", type=int, required=True)
    sp.add_argument("--eb", type=int, required=True)
    sp.add_argument("--max-f", type=int, default=4)
    sp.add_argument("--general-f", action="store_true",
                    help="search every cofactor, not just 1 and 4")
    sp.add_argument("--seed", metavar="HEX")
    sp.add_argument("-o", "--out", metavar="FILE")

    sp = sub.add_parser("keygen", help="generate one side's key pair")
    add_params_opts(sp)
    sp.add_argument("--side", choices=("A", "B"), required=True)
    sp.add_argument("--seed", metavar="HEX")
    sp.add_argument("--export-secret", action="store_true")
    sp.add_argument("-o", "--out", metavar="FILE")

    sp = sub.add_parser("send", help="run the sender over the network")
    add_params_opts(sp)
    add_net_opts(sp)
    sp.add_argument("--msg0", metavar="FILE", required=True)
    sp.add_argument("--msg1", metavar="FILE", required=True)
    sp.add_argument("--seed", metavar="HEX")
    sp.add_argument("--transcript", metavar="FILE")

    sp = sub.add_parser("receive", help="run the receiver over the network")
    add_params_opts(sp)
    add_net_opts(sp)
    sp.add_argument("--choice", type=int, choices=(0, 1), required=True)
    sp.add_argument("--seed", metavar="HEX")
    sp.add_argument("--transcript", metavar="FILE")
    sp.add_argument("-o", "--out", metavar="FILE",
                    help="write the delivered bytes here")

    sp = sub.add_parser("run-local", help="run both parties in-process")
    add_params_opts(sp)
    sp.add_argument("--choice", type=int, choices=(0, 1), required=True)
    sp.add_argument("--msg0", metavar="FILE", required=True)
    sp.add_argument("--msg1", metavar="FILE", required=True)
    sp.add_argument("--seed", metavar="HEX")
    sp.add_argument("--offline", metavar="DIR",
                    help="write the transcript into this directory")
    sp.add_argument("-o", "--out", metavar="FILE")

    sp = sub.add_parser("verify-transcript", help="replay all validations")
    sp.add_argument("transcript", metavar="FILE")
    add_params_opts(sp)

    sp = sub.add_parser("attack", help="adversarial probes and oracles")
    asub = sp.add_subparsers(dest="attack", required=True)
    ap = asub.add_parser("distinguisher")
    add_params_opts(ap)
    ap.add_argument("--seed", metavar="HEX")
    ap.add_argument("--violate", action="store_true",
                    help="plant a constraint violation as positive control")
    ap.add_argument("--bit", type=int, choices=(0, 1), default=1)
    ap = asub.add_parser("dishonest-bob")
    add_params_opts(ap)
    ap.add_argument("--seed", metavar="HEX")
    ap = asub.add_parser("brute-force")
    add_params_opts(ap)
    ap.add_argument("--seed", metavar="HEX")
    ap.add_argument("--side", choices=("A", "B"), default="A")

    sp = sub.add_parser("baseline-ot", help="the classical-group reference OT")
    bsub = sp.add_subparsers(dest="baseline", required=True)
    bp = bsub.add_parser("run")
    bp.add_argument("--choice", type=int, choices=(0, 1), required=True)
    bp.add_argument("--msg0", metavar="FILE", required=True)
    bp.add_argument("--msg1", metavar="FILE", required=True)
    bp.add_argument("--seed", metavar="HEX")
    bp.add_argument("--transcript", metavar="FILE")
    bp.add_argument("-o", "--out", metavar="FILE")

    return p


def _params_from_args(args):
    if getattr(args, "params", None):
        with open(args.params, "rb") as fh:
            return params_from_obj(json.load(fh))
    return preset(args.preset or "p431")


def _seed_from_args(args):
    seed = getattr(args, "seed", None)
    if seed is not None:
        try:
            bytes.fromhex(seed)
        except ValueError as exc:
            raise UsageError(f"--seed must be hex: {exc}") from exc
    return seed


def _read_file(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(obj, out_path=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_delivered(output: bytes, out_path=None) -> None:
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(output)
    print(f"delivered-hex: {output.hex()}")
    try:
        print(f"delivered-text: {output.decode('utf-8')}")
    except UnicodeDecodeError:
        pass


def _cmd_gen_params(args) -> int:
    params = gen_params(args.la, args.ea, args.lb, args.eb,
                        max_f=args.max_f, rng=det_rng(_seed_from_args(args)),
                        general_f=args.general_f)
    _emit(params_to_obj(params), args.out)
    return 0


def _cmd_keygen(args) -> int:
    params = _params_from_args(args)
    kp = keygen(params, args.side, det_rng(_seed_from_args(args)))
    obj = {"side": kp.side, "public": public_to_obj(kp.public)}
    if args.export_secret:
        obj["secret_r"] = kp.r
    _emit(obj, args.out)
    return 0


def _open_stream(args):
    if args.listen:
        return serve_one(args.listen)
    return connect(args.connect)


def _cmd_send(args) -> int:
    params = _params_from_args(args)
    config = SessionConfig(params, seed=_seed_from_args(args),
                           x0=_read_file(args.msg0), x1=_read_file(args.msg1))
    stream = _open_stream(args)
    try:
        run_session("sender", config, stream,
                    transcript_path=args.transcript)
    finally:
        stream.close()
    print("sent both ciphertexts")
    return 0


def _cmd_receive(args) -> int:
    params = _params_from_args(args)
    config = SessionConfig(params, seed=_seed_from_args(args), b=args.choice)
    stream = _open_stream(args)
    try:
        outcome = run_session("receiver", config, stream,
                              transcript_path=args.transcript)
    finally:
        stream.close()
    _emit_delivered(outcome["output"], args.out)
    return 0


def _cmd_run_local(args) -> int:
    params = _params_from_args(args)
    config = SessionConfig(params, seed=_seed_from_args(args), b=args.choice,
                           x0=_read_file(args.msg0), x1=_read_file(args.msg1))
    outcome = run_local(config, offline_dir=args.offline)
    _emit_delivered(outcome["output"], args.out)
    if args.offline:
        print(f"transcript: {outcome['transcript_path']}")
    return 0


def _cmd_verify_transcript(args) -> int:
    params = _params_from_args(args)
    transcript = Transcript.load(args.transcript)
    report = verify_transcript(transcript, params)
    _emit(report)
    return 0 if report["ok"] else 2


def _cmd_attack(args) -> int:
    params = _params_from_args(args)
    rng = det_rng(_seed_from_args(args))
    if args.attack == "distinguisher":
        masked, coeffs = distinguisher_fixture(params, rng, b=args.bit,
                                               violate=args.violate)
        report = distinguisher_scan(params, masked, coeffs, rng=rng)
        _emit(report.to_obj())
        return 0
    if args.attack == "dishonest-bob":
        _emit(dishonest_bob_probe(params, rng))
        return 0
    kp = keygen(params, args.side, rng)
    result = brute_force_secret(params, kp.public, args.side)
    _emit({"recovered_r": result.r, "planted_r": kp.r,
           "match": result.r == kp.r, "space": result.space,
           "seconds": round(result.seconds, 4)})
    return 0


def _cmd_baseline(args) -> int:
    outcome = run_baseline_local(args.choice, _read_file(args.msg0),
                                 _read_file(args.msg1), seed=_seed_from_args(args))
    if args.transcript:
        outcome["transcript"].save(args.transcript)
    _emit_delivered(outcome["output"], args.out)
    return 0


_HANDLERS = {
    "gen-params": _cmd_gen_params,
    "keygen": _cmd_keygen,
    "send": _cmd_send,
    "receive": _cmd_receive,
    "run-local": _cmd_run_local,
    "verify-transcript": _cmd_verify_transcript,
    "attack": _cmd_attack,
    "baseline-ot": _cmd_baseline,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 4
    except (ProtocolAbort, RestartRequired, DecodeError) as exc:
        print(f"protocol abort: {exc}", file=sys.stderr)
        return 2
    except TransportError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return 3
    except SiotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
