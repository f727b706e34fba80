"""
Field - exact coefficient arithmetic over F_p or Q, plus numpy array helpers.
"""

from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_PRIME, MAX_PRIME, FieldKind
from .errors import IdealCalcError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Field:
    """
    Exact coefficient field.

    Prime-field elements are Python ints in [0, p); rationals are Fractions.
    Matrices over a prime field are int64 arrays kept reduced mod p, matrices
    over Q are object arrays of Fractions.

    Usage:
        F = Field(32003)
        F.mul(F.inv(7), 7)  # -> 1
        Q = Field.rationals()
    """

    def __init__(self, prime: Optional[int] = DEFAULT_PRIME, kind: FieldKind = FieldKind.PRIME):
        self.kind = kind
        if kind is FieldKind.PRIME:
            prime = int(prime)
            if not is_prime(prime):
                raise IdealCalcError(f"{prime} is not prime")
            if prime > MAX_PRIME:
                raise IdealCalcError(f"prime {prime} exceeds {MAX_PRIME}")
            self.p = prime
        else:
            self.p = 0

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None, FieldKind.RATIONALS)

    @property
    def is_prime_field(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime_field else Fraction(1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.is_prime_field else "QQ"

    # ====== scalars ======

    def element(self, value: Any):
        if self.is_prime_field:
            if isinstance(value, Fraction):
                return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime_field else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime_field else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.is_prime_field else a * b

    def neg(self, a):
        return (-a) % self.p if self.is_prime_field else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime_field:
            return pow(int(a), -1, self.p)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def symmetric(self, a) -> Any:
        """Integer representative in (-p/2, p/2]; rationals unchanged."""
        if not self.is_prime_field:
            return a
        a = int(a) % self.p
        return a - self.p if a > self.p // 2 else a

    # ====== arrays ======

    @property
    def dtype(self):
        return np.int64 if self.is_prime_field else object

    def zeros(self, shape: Tuple[int, ...]) -> np.ndarray:
        if self.is_prime_field:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def matrix(self, rows: Sequence[Sequence[Any]], shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
        rows = [list(r) for r in rows]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        out = self.zeros(shape)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                out[i, j] = self.element(value)
        return out

    def reduce(self, array: np.ndarray) -> np.ndarray:
        if self.is_prime_field:
            return np.mod(array, self.p)
        return array

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of reduced matrices; over GF(p) the inner sum is reduced in int64-safe chunks."""
        inner = a.shape[1]
        if inner == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if not self.is_prime_field:
            return a @ b
        step = self.safe_inner_length()
        if inner <= step:
            return np.mod(a @ b, self.p)
        out = self.zeros((a.shape[0], b.shape[1]))
        for start in range(0, inner, step):
            out = np.mod(out + a[:, start:start + step] @ b[start:start + step], self.p)
        return out

    def safe_inner_length(self) -> int:
        """Longest dot product of reduced entries that, added to a reduced value, fits in int64."""
        return max(1, (np.iinfo(np.int64).max - self.p) // max(1, (self.p - 1) ** 2))

    def random_elements(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.is_prime_field:
            return rng.integers(0, self.p, size=size, dtype=np.int64)
        values = rng.integers(-9, 10, size=size)
        out = np.empty(values.shape, dtype=object)
        for index, v in np.ndenumerate(values):
            out[index] = Fraction(int(v))
        return out
