"""Encrypt and decrypt byte messages.

Ciphertext byte ``i`` is ``(plaintext[i] + code + t_i) mod 256`` where ``t_i``
is the shift term for position ``i`` (see :mod:`sdree.numtheory`). Decryption
subtracts the same amount. Positions count from the start of the whole
message, so a message may be processed in arbitrary chunks.
"""
from __future__ import annotations

import numpy as np

from ._validation import check_message
from .keyderive import derive_key
from .numtheory import CipherParams, ShiftStream, params_from_derivation

_BLOCK = 1 << 16

__all__ = [
    "StreamCipher",
    "encrypt",
    "decrypt",
    "params_from_key",
    "encrypt_with_key",
    "decrypt_with_key",
]


class StreamCipher:
    """Chunk-at-a-time encryptor or decryptor carrying the global position.

    ``start`` lets independent workers pick up mid-message; each worker's
    output is byte-identical to the matching slice of a one-shot call.
    """

    def __init__(self, params: CipherParams, *, decrypt: bool = False, start: int = 0) -> None:
        self.params = params
        self.decrypt = decrypt
        self._shifts = ShiftStream(params, start=start)

    @property
    def position(self) -> int:
        return self._shifts.position

    def _shift_bytes(self, n: int) -> np.ndarray:
        terms = self._shifts.take(n)
        terms += self.params.code
        terms &= 0xFF
        return terms.astype(np.uint8)

    def update(self, chunk) -> bytes:
        data = check_message(chunk)
        out = np.empty_like(data)
        op = np.subtract if self.decrypt else np.add
        # bounded blocks keep the int64 term buffer small and cache resident
        for lo in range(0, len(data), _BLOCK):
            hi = min(lo + _BLOCK, len(data))
            # uint8 arithmetic wraps modulo 256
            op(data[lo:hi], self._shift_bytes(hi - lo), out=out[lo:hi])
        return out.tobytes()


def encrypt(params: CipherParams, plaintext, start: int = 0) -> bytes:
    """Encrypt ``plaintext`` whose first byte sits at message position ``start``.

    >>> encrypt(params_from_derivation(10, 4), b"aaaa").hex()
    '6b6f7bab'
    """
    return StreamCipher(params, start=start).update(plaintext)


def decrypt(params: CipherParams, ciphertext, start: int = 0) -> bytes:
    return StreamCipher(params, decrypt=True, start=start).update(ciphertext)


def params_from_key(key) -> CipherParams:
    trace = derive_key(key)
    return params_from_derivation(trace.code, trace.power_ex)


def encrypt_with_key(key, plaintext) -> bytes:
    return encrypt(params_from_key(key), plaintext)


def decrypt_with_key(key, ciphertext) -> bytes:
    return decrypt(params_from_key(key), ciphertext)
