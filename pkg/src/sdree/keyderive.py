"""Turn a pass key into the two integers that drive the cipher.

The pipeline is::

    key --weighted_checksum--> csum --digit_sum--> pseudo_code
        pseudo_code --derive_code--> code
        pseudo_code, code --derive_power_ex--> power_ex

Everything is exact integer arithmetic; ``csum`` grows like ``2**len(key)``
and is kept as a Python int.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._validation import check_key
from .exceptions import DegenerateKeyError

__all__ = [
    "KeyDerivationTrace",
    "weighted_checksum",
    "digit_sum",
    "derive_code",
    "derive_power_ex",
    "derive_key",
]


@dataclass(frozen=True)
class KeyDerivationTrace:
    """Every intermediate produced while deriving ``code`` and ``power_ex``."""

    csum: int
    pseudo_code: int
    temporary_power_ex: int
    code: int
    power_ex: int

    @property
    def is_weak(self) -> bool:
        # power_ex == 1 turns every shift after position 0 into the same constant
        return self.power_ex == 1


def weighted_checksum(key) -> int:
    """Sum of ``key[i] * len(key) * 2**i`` over all key bytes."""
    key = check_key(key)
    length = len(key)
    # Horner from the last byte: sum(b_i * 2**i) without building each power
    acc = 0
    for b in reversed(key):
        acc = (acc << 1) + b
    return acc * length


def digit_sum(value: int) -> int:
    """Single pass decimal digit sum (not reduced to one digit)."""
    if value < 0:
        raise ValueError(f"digit_sum is defined for non-negative integers, got {value}")
    if value < 10**18:
        total = 0
        while value:
            value, digit = divmod(value, 10)
            total += digit
        return total
    # str() is subquadratic in CPython for big ints; repeated divmod is not
    return sum(map(int, str(value)))


def derive_code(pseudo_code: int) -> int:
    if pseudo_code <= 0:
        raise DegenerateKeyError(f"pseudo_code must be positive, got {pseudo_code}")
    return pseudo_code % 16 or pseudo_code


def derive_power_ex(pseudo_code: int, code: int) -> int:
    if code < 1:
        raise ValueError(f"code must be >= 1, got {code}")
    power_ex = digit_sum(pseudo_code) % code
    if power_ex in (0, 1):
        power_ex = code
    return power_ex


def derive_key(key) -> KeyDerivationTrace:
    """Run the full derivation and keep the intermediates.

    >>> derive_key(b"hello world")
    KeyDerivationTrace(csum=2344166, pseudo_code=26, temporary_power_ex=8, code=10, power_ex=8)
    """
    csum = weighted_checksum(key)
    pseudo_code = digit_sum(csum)
    code = derive_code(pseudo_code)
    return KeyDerivationTrace(
        csum=csum,
        pseudo_code=pseudo_code,
        temporary_power_ex=digit_sum(pseudo_code),
        code=code,
        power_ex=derive_power_ex(pseudo_code, code),
    )
