"""Input validation helpers shared by the functional API and the estimators."""
from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .exceptions import EmptyKeyError, KeyTooLongError, SDREEError

MAX_KEY_LENGTH = 4096

_BYTES_LIKE = (bytes, bytearray, memoryview)


def check_key(key) -> bytes:
    """Coerce ``key`` to ``bytes`` and enforce the 1..4096 length bound.

    ``str`` keys are encoded as UTF-8. Anything else must be bytes-like or an
    iterable of ints in ``range(256)``.
    """
    if isinstance(key, str):
        key = key.encode("utf-8")
    elif isinstance(key, _BYTES_LIKE):
        key = bytes(key)
    elif isinstance(key, Iterable):
        try:
            key = bytes(key)
        except (TypeError, ValueError) as exc:
            raise TypeError(f"key must be bytes-like or str, got {key!r}") from exc
    else:
        raise TypeError(f"key must be bytes-like or str, got {type(key).__name__}")

    if not key:
        raise EmptyKeyError("key must contain at least one byte")
    if len(key) > MAX_KEY_LENGTH:
        raise KeyTooLongError(
            f"key is {len(key)} bytes; the maximum is {MAX_KEY_LENGTH}"
        )
    return key


def check_message(data) -> np.ndarray:
    """Return a read-only ``uint8`` view of a single message without copying."""
    if isinstance(data, np.ndarray):
        if data.ndim != 1:
            raise ValueError(f"expected a 1-d byte array, got shape {data.shape}")
        if data.dtype != np.uint8:
            if data.size and (data.min() < 0 or data.max() > 255):
                raise ValueError("array values must lie in 0..255")
            data = data.astype(np.uint8)
        return data
    if isinstance(data, str):
        raise TypeError("messages are byte sequences; encode str before encrypting")
    if not isinstance(data, _BYTES_LIKE):
        data = bytes(data)
    return np.frombuffer(data, dtype=np.uint8)


def check_messages(X) -> list:
    """Validate a collection of messages, sklearn-style.

    A lone bytes object is rejected rather than silently treated as a
    sequence of one-byte samples.
    """
    if isinstance(X, (*_BYTES_LIKE, str)):
        raise ValueError(
            "Iterable over byte messages expected, "
            f"{type(X).__name__} object received; wrap it in a list"
        )
    if isinstance(X, np.ndarray) and X.ndim != 1:
        raise ValueError(f"expected a 1-d collection of messages, got shape {X.shape}")
    return [check_message(x) for x in X]


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if value < 1:
        raise SDREEError(f"{name} must be >= 1, got {value}")
    return value
