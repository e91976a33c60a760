"""Command line front end: ``sdree derive|encrypt|decrypt|analyze``.

Exit status is 0 on success, 2 for usage and validation errors and 3 for I/O
failures. Input is processed in fixed-size chunks, so memory use does not
grow with file size.
"""
from __future__ import annotations

import argparse
import base64
import binascii
import os
import sys

from . import __version__
from ._validation import check_key
from .analysis import ByteStats, render_report
from .cipher import StreamCipher
from .exceptions import SDREEError
from .keyderive import derive_key
from .numtheory import CipherParams, params_from_derivation

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

KEY_ENV_VAR = "SDREE_KEY"
CHUNK_SIZE = 1 << 20


class UsageError(Exception):
    pass


# -- wire formats ------------------------------------------------------------

class _RawCodec:
    def encode(self, data: bytes) -> bytes:
        return data

    def decode(self, data: bytes) -> bytes:
        return data

    def finish_encode(self) -> bytes:
        return b""

    def finish_decode(self) -> bytes:
        return b""


class _HexCodec:
    """Lowercase hex, no separators. Whitespace in input is ignored."""

    def __init__(self) -> None:
        self._wrote = False
        self._pending = b""

    def encode(self, data: bytes) -> bytes:
        self._wrote = True
        return data.hex().encode("ascii")

    def finish_encode(self) -> bytes:
        return b"\n" if self._wrote else b""

    def decode(self, data: bytes) -> bytes:
        text = self._pending + b"".join(data.split())
        cut = len(text) - len(text) % 2
        self._pending = text[cut:]
        try:
            return binascii.unhexlify(text[:cut])
        except binascii.Error as exc:
            raise ValueError(f"malformed hex input: {exc}") from None

    def finish_decode(self) -> bytes:
        if self._pending:
            raise ValueError("malformed hex input: odd number of digits")
        return b""


class _Base64Codec:
    """Standard alphabet with padding, emitted as a single line."""

    def __init__(self) -> None:
        self._wrote = False
        self._pending = b""
        self._padded = False

    def encode(self, data: bytes) -> bytes:
        self._wrote = True
        data = self._pending + data
        cut = len(data) - len(data) % 3
        self._pending = data[cut:]
        return base64.b64encode(data[:cut])

    def finish_encode(self) -> bytes:
        tail = base64.b64encode(self._pending)
        self._pending = b""
        return tail + b"\n" if self._wrote else tail

    def decode(self, data: bytes) -> bytes:
        text = self._pending + b"".join(data.split())
        cut = len(text) - len(text) % 4
        self._pending = text[cut:]
        block = text[:cut]
        if not block:
            return b""
        # padding may only appear in the final two characters of the stream
        if self._padded or b"=" in block[:-2]:
            raise ValueError("malformed base64 input: data after padding")
        self._padded = b"=" in block[-2:]
        try:
            return base64.b64decode(block, validate=True)
        except binascii.Error as exc:
            raise ValueError(f"malformed base64 input: {exc}") from None

    def finish_decode(self) -> bytes:
        if self._pending:
            raise ValueError("malformed base64 input: truncated")
        return b""


_CODECS = {"raw": _RawCodec, "hex": _HexCodec, "base64": _Base64Codec}


# -- argument handling ---------------------------------------------------------

def _add_key_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--key", help="pass key (prefer --key-env; argv ends up in shell history)")
    p.add_argument("--key-env", action="store_true",
                   help=f"read the key from the {KEY_ENV_VAR} environment variable")
    p.add_argument("--no-weak-key-warnings", dest="weak_key_warnings",
                   action="store_false", help="silence the power_ex = 1 warning")


def _add_io_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", metavar="PATH", help="input file (default: stdin)")
    p.add_argument("--out", dest="output", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--format", choices=sorted(_CODECS), default="raw",
                   help="ciphertext encoding (default: raw)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdree",
        description="SD-REE position-dependent Caesar-style byte cipher. "
                    "Educational only; not a secure cipher.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="show the parameters derived from a key")
    _add_key_args(p)

    for name, text in (("encrypt", "encrypt raw input"), ("decrypt", "decrypt input")):
        p = sub.add_parser(name, help=text)
        _add_key_args(p)
        _add_io_args(p)
        p.add_argument("--code", type=int, help="explicit code (requires --power-ex)")
        p.add_argument("--power-ex", type=int, help="explicit power_ex (requires --code)")

    p = sub.add_parser("analyze", help="byte frequency and repetition metrics")
    _add_io_args(p)
    p.add_argument("--report", choices=["csv", "chart", "ascii-chart"], default="csv")
    return parser


def _resolve_key(args) -> bytes | None:
    if args.key is not None:
        # recover the exact argv bytes on POSIX
        return check_key(os.fsencode(args.key))
    if args.key_env:
        if os.supports_bytes_environ:
            value = os.environb.get(KEY_ENV_VAR.encode())
        else:
            value = os.environ.get(KEY_ENV_VAR)
            value = None if value is None else value.encode("utf-8")
        if value is None:
            raise UsageError(f"--key-env given but {KEY_ENV_VAR} is not set")
        return check_key(value)
    return None


def _resolve_params(args) -> CipherParams:
    if (args.code is None) != (args.power_ex is None):
        raise UsageError("--code and --power-ex must be given together")
    if args.code is not None:
        if args.code < 1 or args.power_ex < 1:
            raise UsageError("--code and --power-ex must both be >= 1")
        return params_from_derivation(args.code, args.power_ex)
    key = _resolve_key(args)
    if key is None:
        raise UsageError("a key is required: use --key, --key-env, or --code with --power-ex")
    trace = derive_key(key)
    return params_from_derivation(trace.code, trace.power_ex)


def _warn_weak(args, power_ex: int) -> None:
    if args.weak_key_warnings and power_ex == 1:
        print("sdree: warning: weak key (power_ex = 1): every byte after the "
              "first gets the same shift", file=sys.stderr)


def _open_input(args):
    if args.input is None:
        return sys.stdin.buffer, False
    return open(args.input, "rb"), True


def _open_output(args):
    if args.output is None:
        return sys.stdout.buffer, False
    return open(args.output, "wb"), True


def _chunks(stream):
    while True:
        chunk = stream.read(CHUNK_SIZE)
        if not chunk:
            return
        yield chunk


# -- subcommands -------------------------------------------------------------

def cmd_derive(args) -> int:
    key = _resolve_key(args)
    if key is None:
        raise UsageError("a key is required: use --key or --key-env")
    trace = derive_key(key)
    params = params_from_derivation(trace.code, trace.power_ex)
    _warn_weak(args, trace.power_ex)
    for name in ("csum", "pseudo_code", "temporary_power_ex", "code", "power_ex"):
        print(f"{name}={getattr(trace, name)}")
    print(f"prime_index={params.prime_index}")
    print(f"modulus={params.modulus}")
    return EXIT_OK


def _run_cipher(args, decrypt: bool) -> int:
    params = _resolve_params(args)
    _warn_weak(args, params.power_ex)
    cipher = StreamCipher(params, decrypt=decrypt)
    codec = _CODECS[args.format]()

    src, close_src = _open_input(args)
    try:
        dst, close_dst = _open_output(args)
        try:
            for chunk in _chunks(src):
                if decrypt:
                    dst.write(cipher.update(codec.decode(chunk)))
                else:
                    dst.write(codec.encode(cipher.update(chunk)))
            if decrypt:
                dst.write(cipher.update(codec.finish_decode()))
            else:
                dst.write(codec.finish_encode())
            dst.flush()
        finally:
            if close_dst:
                dst.close()
    finally:
        if close_src:
            src.close()
    return EXIT_OK


def cmd_encrypt(args) -> int:
    return _run_cipher(args, decrypt=False)


def cmd_decrypt(args) -> int:
    return _run_cipher(args, decrypt=True)


def cmd_analyze(args) -> int:
    codec = _CODECS[args.format]()
    stats = ByteStats()
    src, close_src = _open_input(args)
    try:
        for chunk in _chunks(src):
            stats.update(codec.decode(chunk))
        stats.update(codec.finish_decode())
    finally:
        if close_src:
            src.close()
    fmt = "csv" if args.report == "csv" else "chart"
    text = render_report(stats.report(), fmt).encode("ascii")
    dst, close_dst = _open_output(args)
    try:
        dst.write(text)
        dst.flush()
    finally:
        if close_dst:
            dst.close()
    return EXIT_OK


_COMMANDS = {
    "derive": cmd_derive,
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "analyze": cmd_analyze,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, SDREEError, ValueError) as exc:
        print(f"sdree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sdree: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
