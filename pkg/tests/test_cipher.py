import os
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdree import (
    EmptyKeyError,
    StreamCipher,
    decrypt,
    decrypt_with_key,
    encrypt,
    encrypt_with_key,
    params_from_derivation,
    params_from_key,
)

from oracles import derive_key_steps, encrypt_bytes

WORKED_EXAMPLE = params_from_derivation(10, 4)


def test_worked_example_vector():
    assert encrypt(WORKED_EXAMPLE, b"aaaa") == bytes([107, 111, 123, 171])
    assert bytes([107, 111, 123, 171]).decode("latin-1") == "ko{«"


def test_worked_example_vector_decrypts():
    assert decrypt(WORKED_EXAMPLE, bytes.fromhex("6b6f7bab")) == b"aaaa"


def test_wrap():
    assert encrypt(WORKED_EXAMPLE, b"\xff") == b"\x09"
    assert decrypt(WORKED_EXAMPLE, b"\x09") == b"\xff"


def test_empty():
    assert encrypt(WORKED_EXAMPLE, b"") == b""
    assert decrypt(WORKED_EXAMPLE, b"") == b""
    assert encrypt_with_key(b"hello world", b"") == b""


def test_derived_key_vector():
    # shifts 0, 8, 64, 512 under the derived power_ex of 8
    assert encrypt_with_key(b"hello world", b"aaaa") == bytes.fromhex("6b73ab6b")
    assert decrypt_with_key(b"hello world", bytes.fromhex("6b73ab6b")) == b"aaaa"


def test_all_single_bytes_round_trip():
    for b in range(256):
        m = bytes([b])
        assert decrypt_with_key(b"hello world", encrypt_with_key(b"hello world", m)) == m


def test_key_errors_propagate():
    with pytest.raises(EmptyKeyError):
        encrypt_with_key(b"", b"abc")


def test_input_not_modified():
    buf = bytearray(b"hello")
    encrypt(WORKED_EXAMPLE, buf)
    assert buf == b"hello"


def test_accepts_numpy_and_memoryview():
    data = os.urandom(1000)
    expected = encrypt(WORKED_EXAMPLE, data)
    assert encrypt(WORKED_EXAMPLE, np.frombuffer(data, dtype=np.uint8)) == expected
    assert encrypt(WORKED_EXAMPLE, memoryview(data)) == expected


def test_str_is_rejected():
    with pytest.raises(TypeError):
        encrypt(WORKED_EXAMPLE, "aaaa")


keys = st.binary(min_size=1, max_size=64).filter(any)


@given(keys, st.binary(max_size=5000))
def test_round_trip(key, message):
    assert decrypt_with_key(key, encrypt_with_key(key, message)) == message


@given(keys, st.binary(max_size=600))
@settings(max_examples=50)
def test_matches_per_byte_oracle(key, message):
    t = derive_key_steps(key)
    assert encrypt_with_key(key, message) == encrypt_bytes(t["code"], t["power_ex"], message)


@given(st.integers(0, 5000))
def test_positionwise_bijection(i):
    outputs = {encrypt(WORKED_EXAMPLE, bytes([b]), start=i) for b in range(256)}
    assert len(outputs) == 256


@given(st.binary(min_size=1, max_size=2000), st.data())
def test_locality(message, data):
    i = data.draw(st.integers(0, len(message) - 1))
    delta = data.draw(st.integers(1, 255))
    changed = bytearray(message)
    changed[i] = (changed[i] + delta) % 256
    a, b = encrypt(WORKED_EXAMPLE, message), encrypt(WORKED_EXAMPLE, bytes(changed))
    assert len(a) == len(message)
    assert [k for k in range(len(a)) if a[k] != b[k]] == [i]


@given(st.binary(max_size=300_000), st.lists(st.integers(0, 300_000), max_size=6))
@settings(max_examples=30)
def test_chunked_equals_one_shot(message, cuts):
    cuts = sorted({c for c in cuts if c <= len(message)} | {0, len(message)})
    one_shot = encrypt(WORKED_EXAMPLE, message)
    # sequential streaming
    s = StreamCipher(WORKED_EXAMPLE)
    assert b"".join(s.update(message[a:b]) for a, b in zip(cuts, cuts[1:])) == one_shot
    assert s.position == len(message)
    # independent workers re-seeded from the closed form
    parts = [encrypt(WORKED_EXAMPLE, message[a:b], start=a) for a, b in zip(cuts, cuts[1:])]
    assert b"".join(parts) == one_shot


def test_params_from_key():
    p = params_from_key(b"hello world")
    assert (p.code, p.power_ex, p.prime_index, p.modulus) == (10, 8, 800, 6133)


def test_max_length_keys_stay_within_prime_bound():
    # code <= 11160 and power_ex <= 36 bound the prime index near 3.3e6 < 1e7
    rng = random.Random(11)
    for key in [b"\xff" * 4096] + [rng.randbytes(4096) for _ in range(20)]:
        p = params_from_key(key)
        assert p.prime_index <= 3_263_040
        assert decrypt(p, encrypt(p, key)) == key
