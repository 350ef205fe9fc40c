"""Sub-seed derivation from one master seed."""

from __future__ import annotations

from hashlib import blake2b

SEED_BYTES = 8


def derive_seed(master: int, module: str, index: int = 0) -> int:
    """
    64-bit sub-seed for (module, index) under `master`.

    Keyed BLAKE2b with the master seed as key and "module:index" as message,
    so streams of different modules or trials never overlap in practice.
    """
    if master < 0:
        raise ValueError("master seed must be non-negative")
    key = master.to_bytes(max(1, (master.bit_length() + 7) // 8), "big")
    if len(key) > 64:
        key = blake2b(key, digest_size=64).digest()
    digest = blake2b(f"{module}:{index}".encode(), key=key, digest_size=SEED_BYTES).digest()
    return int.from_bytes(digest, "big")


def derive_seed_bits(master: int, module: str, index: int, bits: int) -> int:
    """A sub-seed of exactly `bits` bits, built from as many 64-bit blocks as needed."""
    if bits < 0:
        raise ValueError("bit length must be non-negative")
    value = 0
    for block in range((bits + 63) // 64):
        value = (value << 64) | derive_seed(master, f"{module}#{block}", index)
    return value >> (-bits % 64) if bits else 0
