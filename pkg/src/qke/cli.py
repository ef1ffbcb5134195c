"""Command line front end.

Exit codes: 0 ok, 1 bench self-check failed, 2 usage or I/O error,
3 degenerate shared key, 4 network failure, 5 protocol violation,
6 group too large for the attack harness.
"""

from __future__ import annotations

import argparse
import random
import socket
import sys
import threading
import warnings
from pathlib import Path

from . import baselines, cryptanalysis, net, wire
from .errors import FormatError, QKEError, ScaleError
from .keys import PrivateKey, PublicKey, generate_keypair, keypair_from_exponents
from .modmath import DomainParams, generate_params
from .protocol import DegenerateKeyWarning, IntermediateValue, run_exchange

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_IO = 2
EXIT_DEGENERATE = 3
EXIT_NETWORK = 4
EXIT_PROTOCOL = 5
EXIT_SCALE = 6

DEMO_GROUP = (23, 5)

# key sizes in bits per |p|: private, public, secret
TABLE_SIZES = {128: (384, 256, 128), 256: (768, 512, 256), 512: (1536, 1024, 512)}
REFERENCE_ROWS = [
    ("Kyber512", "1632 bytes", "800 bytes", "768 bytes", "256 bits"),
    ("ECDH", "32 bytes", "64 bytes", "-", "256 bits"),
    ("this scheme (|p|=256)", "96 bytes", "64 bytes", "-", "256 bits"),
]


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _rng(seed):
    return random.Random(seed) if seed is not None else random.SystemRandom()


def _out(line=""):
    print(line, flush=True)


def _read_block(path, kind, code=EXIT_IO):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", code) from exc
    try:
        obj = wire.parse_key_text(text)
    except FormatError as exc:
        raise CliError(f"{path}: {exc}", code) from exc
    if kind is DomainParams and isinstance(obj, (PrivateKey, PublicKey)):
        obj = obj.params
    if not isinstance(obj, kind):
        raise CliError(f"{path}: expected {kind.__name__}, found {type(obj).__name__}", code)
    return obj


def _address(text):
    host, sep, port = text.rpartition(":")
    if not sep or not port.isdigit():
        raise argparse.ArgumentTypeError(f"expected HOST:PORT, got {text!r}")
    return host or "127.0.0.1", int(port)


def _exponents(text):
    try:
        x, y, z = (int(v, 0) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected x,y,z") from None
    return x, y, z


# ---------------------------------------------------------------------------


def cmd_params(args):
    params = generate_params(args.bits, _rng(args.seed))
    text = wire.render_key_text(params)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc.strerror}", EXIT_IO) from exc
        _out(f"params={args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_keygen(args):
    params = _read_block(args.params, DomainParams)
    if args.exponents is not None:
        try:
            sk, pk = keypair_from_exponents(params, *args.exponents)
        except QKEError as exc:
            raise CliError(str(exc), EXIT_IO) from exc
    else:
        sk, pk = generate_keypair(params, _rng(args.seed))
    priv, pub = Path(f"{args.out}.priv"), Path(f"{args.out}.pub")
    try:
        priv.write_text(wire.render_key_text(sk))
        pub.write_text(wire.render_key_text(pk))
    except OSError as exc:
        raise CliError(f"cannot write key files: {exc.strerror}", EXIT_IO) from exc
    _out(f"private={priv}")
    _out(f"public={pub}")
    _out(f"P={pk.P:x}")
    _out(f"Q={pk.Q:x}")
    return EXIT_OK


def _report_session(session, allow_degenerate):
    _out(f"sent_intermediate={session.outgoing_intermediate:x}")
    _out(f"received_intermediate={session.incoming_intermediate:x}")
    if session.degenerate and not allow_degenerate:
        _out("degenerate=yes")
        return EXIT_DEGENERATE
    _out(f"shared_key={session.shared_key:x}")
    return EXIT_OK


def _run_peer_session(handler, sock, key, allow_degenerate, *extra):
    try:
        with sock, warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateKeyWarning)
            session = handler(sock, key, *extra)
    except net.ProtocolViolation as exc:
        print(f"error: protocol violation: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except OSError as exc:
        print(f"error: network failure: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    return _report_session(session, allow_degenerate)


def cmd_peer(args):
    key = _read_block(args.key, PrivateKey)
    expect = _read_block(args.expect_params, DomainParams) if args.expect_params else None
    if args.connect:
        if expect is not None and expect != key.params:
            raise CliError("local key is not in the expected group", EXIT_PROTOCOL)
        try:
            sock = socket.create_connection(args.connect, timeout=args.timeout)
        except OSError as exc:
            raise CliError(f"cannot connect to {args.connect[0]}:{args.connect[1]}: {exc}", EXIT_NETWORK) from exc
        return _run_peer_session(net.run_initiator, sock, key, args.allow_degenerate)

    try:
        server = socket.create_server(args.listen)
    except OSError as exc:
        raise CliError(f"cannot listen on {args.listen[0]}:{args.listen[1]}: {exc}", EXIT_NETWORK) from exc
    with server:
        host, port = server.getsockname()[:2]
        _out(f"listening={host}:{port}")
        server.settimeout(args.timeout)
        results = []
        threads = []
        lock = threading.Lock()

        def serve(conn):
            conn.settimeout(args.timeout)
            code = _run_peer_session(net.run_responder, conn, key, args.allow_degenerate, expect)
            with lock:
                results.append(code)

        for _ in range(args.sessions):
            try:
                conn, _ = server.accept()
            except OSError as exc:
                print(f"error: network failure: {exc}", file=sys.stderr)
                results.append(EXIT_NETWORK)
                break
            t = threading.Thread(target=serve, args=(conn,))
            t.start()
            threads.append(t)
        for t in threads:
            t.join()
    return max(results, default=EXIT_OK)


def cmd_attack(args):
    pk_a = _read_block(args.public, PublicKey)
    truth = _read_block(args.truth, PrivateKey) if args.truth else None
    try:
        if args.mode == "public":
            system = cryptanalysis.constraints_from_public_key(pk_a)
        elif args.mode == "channel":
            if args.peer_public is None or args.msg_ab is None or args.msg_ba is None:
                raise CliError("channel mode needs --peer-public, --msg-ab and --msg-ba", EXIT_IO)
            pk_b = _read_block(args.peer_public, PublicKey)
            system = cryptanalysis.constraints_from_transcript(
                pk_a, pk_b, IntermediateValue(args.msg_ab), IntermediateValue(args.msg_ba)
            )
        else:
            if args.eve_key is None or args.msg is None:
                raise CliError("insider mode needs --eve-key and --msg", EXIT_IO)
            eve = _read_block(args.eve_key, PrivateKey)
            system = cryptanalysis.constraints_from_insider(pk_a, eve, IntermediateValue(args.msg))
        reports = cryptanalysis.analyze(system, truth)
    except ScaleError as exc:
        raise CliError(str(exc), EXIT_SCALE) from exc
    except QKEError as exc:
        raise CliError(str(exc), EXIT_IO) from exc

    derived = reports[cryptanalysis.WInterpretation.DERIVED_FROM_KEY]
    free = reports[cryptanalysis.WInterpretation.FREE_VARIABLE]
    yes_no = lambda flag: "yes" if flag else "no"  # noqa: E731
    _out(f"mode={args.mode}")
    _out(f"modulus={system.modulus}")
    for name, value in system.knowns.items():
        _out(f"{name}={value}")
    _out(f"count={derived.candidate_count}")
    _out(f"count_free_w={free.candidate_count}")
    if args.mode == "channel":
        _out(f"assignments={derived.assignment_count}")
        _out(f"assignments_free_w={free.assignment_count}")
    if truth is not None:
        _out(f"contains_truth={yes_no(derived.contains_true_key)}")
        _out(f"contains_truth_free_w={yes_no(free.contains_true_key)}")
    shown = derived.candidates[: args.show]
    _out("candidates=" + " ".join(f"({x},{y},{z})" for x, y, z in shown))
    return EXIT_OK


def cmd_bench(args):
    rng = _rng(args.seed)
    params = generate_params(args.bits, rng)
    a, _ = generate_keypair(params, rng)
    b, _ = generate_keypair(params, rng)
    alice, _ = run_exchange(a, b)
    width = args.bits // 8
    measured = (
        len(wire.fixed_width_encode(a, width)),
        len(wire.fixed_width_encode(alice.local_public, width)),
        len(wire.fixed_width_encode(alice.shared_key, width)),
    )
    expected = TABLE_SIZES[args.bits]
    ok = True
    _out(f"bits={args.bits}")
    for name, octets, want in zip(("private", "public", "secret"), measured, expected):
        match = octets * 8 == want
        ok &= match
        _out(f"{name}_bits={octets * 8} {name}_bytes={octets} expected_bits={want} match={'yes' if match else 'no'}")
    for name, priv, pub, ct, secret in REFERENCE_ROWS:
        _out(f"reference={name!r} private={priv!r} public={pub!r} ciphertext={ct!r} secret={secret!r}")
    _out(f"status={'ok' if ok else 'mismatch'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def _demo_params(args, rng):
    if args.bits is None:
        return DomainParams(*DEMO_GROUP)
    return generate_params(args.bits, rng)


def cmd_demo(args):
    rng = _rng(args.seed)
    params = _demo_params(args, rng)
    p, g = params.p, params.g
    _out(f"p={p} g={g}")
    pick = lambda v: v if v is not None else rng.randrange(p - 1)  # noqa: E731
    if args.scheme == "dh":
        alice = baselines.DhKeypair(pick(args.xa), params)
        bob = baselines.DhKeypair(pick(args.xb), params)
        k_ab = baselines.dh_shared(alice, bob.public)
        k_ba = baselines.dh_shared(bob, alice.public)
        _out(f"x_a={alice.secret}")
        _out(f"x_b={bob.secret}")
        _out(f"A={alice.public}  # g^x_a mod p, Alice -> Bob")
        _out(f"B={bob.public}  # g^x_b mod p, Bob -> Alice")
        _out(f"k_ab={k_ab}  # (g^x_b)^x_a mod p, computed by Alice")
        _out(f"k_ba={k_ba}  # (g^x_a)^x_b mod p, computed by Bob")
        _out(f"equal={'yes' if k_ab == k_ba else 'no'}")
        return EXIT_OK
    x_b = pick(args.xb)
    y_a = pick(args.ya)
    m = args.m if args.m is not None else rng.randrange(1, p)
    p_b = pow(g, x_b, p)
    ct = baselines.elgamal_encrypt(p_b, m, y_a, params)
    recovered = baselines.elgamal_decrypt(ct, x_b, params)
    _out(f"x_b={x_b}")
    _out(f"P_b={p_b}  # g^x_b mod p, Bob's published key")
    _out(f"y_a={y_a}")
    _out(f"m={m}")
    _out(f"k_s={pow(p_b, y_a, p)}  # P_b^y_a mod p, computed by Alice")
    _out(f"ciphertext=({ct.ephemeral},{ct.body})  # (g^y_a mod p, m*k_s mod p)")
    _out(f"recovered={recovered}  # body * ((g^y_a)^x_b)^-1 mod p, computed by Bob")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _bits_at_least_5(text):
    value = int(text)
    if value < 5:
        raise argparse.ArgumentTypeError("bits must be >= 5")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="qke", description="Two-component public-key secret establishment toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="generate a safe-prime group")
    p.add_argument("--bits", type=_bits_at_least_5, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="write the parameter block here instead of stdout")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--params", required=True)
    p.add_argument("--out", required=True, help="writes OUT.priv and OUT.pub")
    p.add_argument("--seed", type=int)
    p.add_argument("--exponents", type=_exponents, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("peer", help="run the key exchange with a remote peer")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--listen", type=_address, metavar="HOST:PORT")
    mode.add_argument("--connect", type=_address, metavar="HOST:PORT")
    p.add_argument("--key", required=True)
    p.add_argument("--expect-params")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--sessions", type=int, default=1, help="connections to serve in listen mode")
    p.add_argument("--allow-degenerate", action="store_true", help="print a shared key of 1 instead of refusing it")
    p.set_defaults(func=cmd_peer)

    p = sub.add_parser("attack", help="measure private-key solution spaces with a discrete-log oracle")
    p.add_argument("--mode", choices=("public", "channel", "insider"), required=True)
    p.add_argument("--public", required=True, help="target (Alice) public key file")
    p.add_argument("--peer-public", help="channel: the other party's public key file")
    p.add_argument("--msg-ab", type=lambda s: int(s, 0), help="channel: intermediate sent by the target")
    p.add_argument("--msg-ba", type=lambda s: int(s, 0), help="channel: intermediate sent to the target")
    p.add_argument("--eve-key", help="insider: adversary's own private key file")
    p.add_argument("--msg", type=lambda s: int(s, 0), help="insider: intermediate the target sent to the adversary")
    p.add_argument("--truth", help="target private key file, to check containment")
    p.add_argument("--show", type=int, default=10, help="candidates to print")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("bench", help="serialized key sizes against the reference table")
    p.add_argument("--bits", type=int, choices=sorted(TABLE_SIZES), default=256)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("demo", help="annotated Diffie-Hellman or ElGamal run")
    p.add_argument("scheme", choices=("dh", "elgamal"))
    p.add_argument("--seed", type=int)
    p.add_argument("--bits", type=_bits_at_least_5, help="generate a group instead of p=23, g=5")
    p.add_argument("--xa", type=int)
    p.add_argument("--xb", type=int)
    p.add_argument("--ya", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
