"""Arithmetic in GF(2^m) through log/exp tables, vectorised with numpy."""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from locality_lab.errors import ScaleGuardError

MAX_DEGREE = 16

# Primitive polynomials, bit i = coefficient of x^i.
PRIMITIVE_POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


def _exp_table(m: int, poly: int) -> Optional[np.ndarray]:
    """Powers of x modulo poly, or None if x does not have order 2^m - 1."""
    order = (1 << m) - 1
    exp = np.zeros(order, dtype=np.int64)
    seen = set()
    value = 1
    for i in range(order):
        if value in seen:
            return None
        seen.add(value)
        exp[i] = value
        value <<= 1
        if value >> m:
            value ^= poly
    return exp if value == 1 else None


class GF2Field:
    """
    GF(2^m) for 1 <= m <= 16.

    Elements are ints in [0, 2^m). The tables are built once per degree.
    """

    def __init__(self, m: int):
        if not 1 <= m <= MAX_DEGREE:
            raise ScaleGuardError(f"GF(2^m) supported for 1 <= m <= {MAX_DEGREE}, got {m}")
        self.m = m
        self.size = 1 << m
        self.order = self.size - 1
        self.poly, exp = self._find_primitive(m)
        self.exp = exp
        self.log = np.zeros(self.size, dtype=np.int64)
        self.log[exp] = np.arange(self.order, dtype=np.int64)

    @staticmethod
    def _find_primitive(m: int):
        poly = PRIMITIVE_POLYNOMIALS[m]
        exp = _exp_table(m, poly)
        if exp is not None:
            return poly, exp
        for candidate in range((1 << m) | 1, 1 << (m + 1), 2):
            exp = _exp_table(m, candidate)
            if exp is not None:
                return candidate, exp
        raise RuntimeError(f"no primitive polynomial of degree {m}")

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % self.order])

    def inv(self, x):
        """Multiplicative inverse elementwise, with 0 sent to 0."""
        x = np.asarray(x, dtype=np.int64)
        return np.where(x == 0, 0, self.exp[(self.order - self.log[x]) % self.order])

    def poly_eval(self, coeffs, x):
        """
        Σ coeffs[..., i] · x^i with x^0 = 1, broadcasting over leading axes.

        Args:
            coeffs: Integer array of shape (..., k)
            x: Integer array broadcastable to coeffs.shape[:-1]

        Returns:
            Array of shape coeffs.shape[:-1] (a numpy scalar for 1-d coeffs)
        """
        coeffs = np.asarray(coeffs, dtype=np.int64)
        x = np.asarray(x, dtype=np.int64)
        powers = np.arange(coeffs.shape[-1], dtype=np.int64)
        logx = np.asarray(self.log[x])[..., None]
        zero_x = np.asarray(x == 0)[..., None]
        idx = (self.log[coeffs] + powers * logx) % self.order
        terms = np.where(coeffs != 0, self.exp[idx], 0)
        terms = np.where(zero_x & (powers > 0), 0, terms)
        return np.bitwise_xor.reduce(terms, axis=-1)


@lru_cache(maxsize=None)
def field(m: int) -> GF2Field:
    return GF2Field(m)
