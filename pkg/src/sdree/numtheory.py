"""Prime lookup, modular powers and the per-position shift stream.

The shift added at message position ``i`` is ``0`` for ``i == 0`` and
``power_ex**i mod P`` otherwise, where ``P`` is the ``power_ex * code * 10``-th
prime. ``ShiftStream`` produces these terms incrementally; ``shift_term_at`` and
``shift_terms_at`` compute them directly from the position.
"""
from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass

import numpy as np

from ._validation import check_positive_int
from .exceptions import IndexOutOfRangeError

__all__ = [
    "MAX_PRIME_INDEX",
    "CipherParams",
    "ShiftStream",
    "nth_prime",
    "mod_pow",
    "mod_pow_array",
    "params_from_derivation",
    "shift_term_at",
    "shift_terms_at",
    "shift_stream",
]

MAX_PRIME_INDEX = 10**7

# Largest modulus is nth_prime(10**7) = 179424673 < 2**28, so the product of
# two residues stays below 2**56 and int64 arithmetic never overflows.
_TERM_DTYPE = np.int64
_WINDOW_BITS = 8
_TABLE_SIZE = 1 << 16
# below this many terms a Python loop beats building arrays
_SCALAR_CUTOFF = 32


def _sieve_odd(limit: int) -> np.ndarray:
    """All primes <= limit using an odd-only sieve of Eratosthenes."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    # index k stands for 2k + 1
    size = (limit - 1) // 2 + 1
    is_prime = np.ones(size, dtype=bool)
    is_prime[0] = False
    for k in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if is_prime[k]:
            p = 2 * k + 1
            is_prime[(p * p) // 2 :: p] = False
    odd = 2 * np.flatnonzero(is_prime).astype(np.int64) + 1
    return np.concatenate(([2], odd))


def _upper_bound_nth_prime(n: int) -> int:
    # Rosser's bound p_n < n (ln n + ln ln n), valid for n >= 6
    if n < 6:
        return 13
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


class _PrimeTable:
    """Grow-only prime cache; callers never observe its state."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._primes = _sieve_odd(1000)

    def get(self, n: int) -> int:
        primes = self._primes
        if n > len(primes):
            with self._lock:
                primes = self._primes
                if n > len(primes):
                    limit = _upper_bound_nth_prime(n)
                    # at least double so a sequence of growing lookups stays linear
                    limit = max(limit, min(2 * int(primes[-1]), _upper_bound_nth_prime(MAX_PRIME_INDEX)))
                    primes = self._primes = _sieve_odd(limit)
        return int(primes[n - 1])


_PRIMES = _PrimeTable()


def nth_prime(n: int) -> int:
    """The ``n``-th prime, 1-indexed, for ``1 <= n <= 10**7``.

    >>> nth_prime(1), nth_prime(25), nth_prime(400)
    (2, 97, 2741)
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"n must be an integer, got {type(n).__name__}")
    if not 1 <= n <= MAX_PRIME_INDEX:
        raise IndexOutOfRangeError(f"n must lie in 1..{MAX_PRIME_INDEX}, got {n}")
    return _PRIMES.get(int(n))


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """``base**exponent % modulus`` by square-and-multiply."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise ValueError(f"exponent must be non-negative, got {exponent}")
    return pow(base, exponent, modulus)


def mod_pow_array(base: int, exponents, modulus: int) -> np.ndarray:
    """Elementwise ``base**e % modulus`` for an array of exponents.

    Fixed-window exponentiation: each exponent is split into 8-bit digits and
    every digit selects from a 256-entry table of ``base**(d * 256**j)``.
    ``modulus`` must be below ``2**31`` so products fit in int64.
    """
    if not 2 <= modulus < 2**31:
        raise ValueError(f"modulus must lie in 2..2**31-1, got {modulus}")
    e = np.asarray(exponents, dtype=np.int64)
    if e.size and e.min() < 0:
        raise ValueError("exponents must be non-negative")
    result = np.ones(e.shape, dtype=np.int64)
    if not e.size:
        return result
    windows = max(1, -(-int(e.max()).bit_length() // _WINDOW_BITS))
    digit = np.empty_like(e)
    for j in range(windows):
        shift = j * _WINDOW_BITS
        table = np.array(
            [pow(base, d << shift, modulus) for d in range(1 << _WINDOW_BITS)],
            dtype=np.int64,
        )
        np.right_shift(e, shift, out=digit)
        np.bitwise_and(digit, (1 << _WINDOW_BITS) - 1, out=digit)
        if j == 0:
            np.take(table, digit, out=result)
        else:
            result *= np.take(table, digit)
            result %= modulus
    return result


@dataclass(frozen=True)
class CipherParams:
    """Operational key material: base shift, exponent base, prime index, modulus."""

    code: int
    power_ex: int
    prime_index: int
    modulus: int


def params_from_derivation(code: int, power_ex: int) -> CipherParams:
    code = check_positive_int(code, "code")
    power_ex = check_positive_int(power_ex, "power_ex")
    prime_index = power_ex * code * 10
    return CipherParams(
        code=code,
        power_ex=power_ex,
        prime_index=prime_index,
        modulus=nth_prime(prime_index),
    )


def shift_term_at(params: CipherParams, i: int) -> int:
    if i < 0:
        raise ValueError(f"position must be non-negative, got {i}")
    if i == 0:
        return 0
    return mod_pow(params.power_ex, i, params.modulus)


def shift_terms_at(params: CipherParams, positions) -> np.ndarray:
    """Vectorised ``shift_term_at`` over an array of positions."""
    positions = np.asarray(positions, dtype=np.int64)
    terms = mod_pow_array(params.power_ex, positions, params.modulus)
    terms[positions == 0] = 0
    return terms


@functools.lru_cache(maxsize=32)
def _power_table(power_ex: int, modulus: int) -> np.ndarray:
    """``power_ex**k mod modulus`` for ``k < _TABLE_SIZE``, built by doubling."""
    table = np.ones(1, dtype=_TERM_DTYPE)
    step = power_ex % modulus
    while len(table) < _TABLE_SIZE:
        table = np.concatenate((table, table * step % modulus))
        step = step * step % modulus
    table.flags.writeable = False
    return table


class ShiftStream:
    """Sequential generator of shift terms, one multiply per position.

    Iterate for single terms or call :meth:`take` for a numpy block; the two
    share state and can be mixed freely.

    >>> s = ShiftStream(params_from_derivation(10, 4))
    >>> [next(s) for _ in range(5)]
    [0, 4, 16, 64, 256]
    """

    def __init__(self, params: CipherParams, start: int = 0) -> None:
        self.params = params
        self.position = 0
        self.current_term = 0
        # term that will be emitted at ``self.position`` once position >= 1
        self._pending = params.power_ex % params.modulus
        if start:
            self.seek(start)

    def seek(self, position: int) -> None:
        """Jump to ``position`` using the closed form, as when splitting work."""
        if position < 0:
            raise ValueError(f"position must be non-negative, got {position}")
        p = self.params
        self.position = position
        if position == 0:
            self._pending = p.power_ex % p.modulus
            self.current_term = 0
        else:
            self._pending = mod_pow(p.power_ex, position, p.modulus)
            self.current_term = shift_term_at(p, position - 1)

    def __iter__(self):
        return self

    def __next__(self) -> int:
        if self.position == 0:
            term = 0
        else:
            term = self._pending
            self._pending = term * self.params.power_ex % self.params.modulus
        self.position += 1
        self.current_term = term
        return term

    def take(self, n: int) -> np.ndarray:
        """The next ``n`` terms as an int64 array."""
        if n <= _SCALAR_CUTOFF:
            return np.fromiter((next(self) for _ in range(n)), dtype=_TERM_DTYPE, count=n)
        out = np.empty(n, dtype=_TERM_DTYPE)
        filled = 0
        if self.position == 0:
            out[0] = next(self)
            filled = 1
        first = filled
        modulus = self.params.modulus
        table = _power_table(self.params.power_ex, modulus)
        while filled < n:
            m = min(n - filled, len(table))
            block = out[filled : filled + m]
            np.multiply(table[:m], self._pending, out=block)
            np.remainder(block, modulus, out=block)
            self._pending = int(block[-1]) * self.params.power_ex % modulus
            filled += m
        self.position += n - first
        self.current_term = int(out[-1])
        return out


def shift_stream(params: CipherParams) -> ShiftStream:
    return ShiftStream(params)
