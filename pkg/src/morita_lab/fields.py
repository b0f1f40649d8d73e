"""Exact scalar fields: prime fields F_p and the rationals.

Matrices are numpy 2-D arrays.  Over F_p the dtype is int64 with entries
normalized to 0..p-1 (object dtype with Python ints for very large p, where
int64 products could overflow).  Over Q the dtype is object with Fraction
entries.  All operations route through a FieldSpec so callers never touch
dtype details.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# Largest p for which int64 arithmetic in matmul cannot overflow:
# (p-1)^2 * k <= 2^63 - 1 must hold for k up to the chunk size below.
_INT64_SAFE_PRIME = 1 << 25
_MATMUL_CHUNK = 2048


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p (kind="prime") or the rationals (kind="rational")."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or self.p > (1 << 31) or not _is_prime(self.p):
                raise ValueError(f"not a prime <= 2^31: {self.p}")
        elif self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- scalars ------------------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def scalar(self, value):
        """Coerce an int, Fraction, or "num/den" string into this field."""
        if self.kind == "prime":
            if isinstance(value, str):
                value = int(value)
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not an element of F_{self.p}")
                value = value.numerator
            return int(value) % self.p
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    def inv(self, a):
        if self.kind == "prime":
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(int(a), self.p - 2, self.p)
        return Fraction(1) / a

    def neg(self, a):
        if self.kind == "prime":
            return (-int(a)) % self.p
        return -a

    # -- arrays -------------------------------------------------------------

    @property
    def _dtype(self):
        if self.kind == "prime" and self.p <= _INT64_SAFE_PRIME:
            return np.int64
        return object

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        a = np.zeros((rows, cols), dtype=self._dtype)
        if self._dtype is object:
            a[...] = self.zero
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.one
        return a

    def asmatrix(self, rows) -> np.ndarray:
        """Build a matrix from nested sequences, coercing every entry."""
        rows = list(rows)
        ncols = len(rows[0]) if rows else 0
        a = self.zeros(len(rows), ncols)
        for i, row in enumerate(rows):
            row = list(row)
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                a[i, j] = self.scalar(v)
        return a

    def normalize(self, a: np.ndarray) -> np.ndarray:
        if self.kind == "prime":
            if a.dtype == object:
                out = np.empty(a.shape, dtype=object)
                flat_in, flat_out = a.reshape(-1), out.reshape(-1)
                for i, v in enumerate(flat_in):
                    flat_out[i] = int(v) % self.p
                return out
            return a % self.p
        return a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"matmul shape mismatch {a.shape} x {b.shape}")
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.kind == "prime" and a.dtype != object and b.dtype != object:
            k = a.shape[1]
            if k <= _MATMUL_CHUNK:
                return (a @ b) % self.p
            acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
            for s in range(0, k, _MATMUL_CHUNK):
                acc = (acc + a[:, s : s + _MATMUL_CHUNK] @ b[s : s + _MATMUL_CHUNK]) % self.p
            return acc
        return self.normalize(np.dot(a, b))

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        if a.shape != b.shape:
            return False
        return bool(np.all(self.normalize(a) == self.normalize(b)))

    def is_zero(self, a: np.ndarray) -> bool:
        return bool(np.all(self.normalize(a) == self.zero)) if a.size else True

    def freeze(self, a: np.ndarray) -> np.ndarray:
        a = self.normalize(a)
        a.flags.writeable = False
        return a


F2 = FieldSpec("prime", 2)
F3 = FieldSpec("prime", 3)
QQ = FieldSpec("rational")


def field_from_token(token: str) -> FieldSpec:
    """Parse a field given as "Q" or a prime written in decimal."""
    if token.strip().upper() == "Q":
        return QQ
    return FieldSpec("prime", int(token))
