"""
Hilbert series of S/M for monomial ideals M, by pivoting on variables:
    N(M) = N(M + (x)) + t * N(M : x)
"""

from dataclasses import dataclass
from math import comb
from typing import List, Sequence, Tuple

import numpy as np


def minimalize(A: np.ndarray) -> np.ndarray:
    """Minimal generators among the monomials given as rows of A."""
    kept: List[np.ndarray] = []
    for m in A:
        if any(np.all(m >= g) for g in kept):
            continue
        kept = [g for g in kept if not np.all(g >= m)]
        kept.append(m)
    if not kept:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return np.array(kept, dtype=np.int64)


def _add(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    n = max(len(p), len(q))
    out = np.zeros(n, dtype=np.int64)
    out[: len(p)] += p
    out[: len(q)] += q
    return out


def _shift(p: np.ndarray, k: int) -> np.ndarray:
    return np.concatenate([np.zeros(k, dtype=np.int64), p])


def _one_minus_t_pow(k: int) -> np.ndarray:
    out = np.zeros(k + 1, dtype=np.int64)
    out[0] += 1
    out[k] -= 1
    return out


def _pure_product(rows: Sequence[np.ndarray]) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    for row in rows:
        result = np.convolve(result, _one_minus_t_pow(int(row.sum())))
    return result


def _numerator(A: np.ndarray) -> np.ndarray:
    if len(A) == 0:
        return np.array([1], dtype=np.int64)
    if any(not row.any() for row in A):
        return np.array([0], dtype=np.int64)
    support = np.count_nonzero(A, axis=1)
    mixed = A[support > 1]
    if len(mixed) <= 1:
        pure = list(A[support == 1])
        result = _pure_product(pure)
        if len(mixed):
            m = mixed[0]
            colon = [np.maximum(row - m, 0) for row in pure]
            result = _add(result, -_shift(_pure_product(colon), int(m.sum())))
        return result
    v = int(np.argmax(np.count_nonzero(mixed, axis=0)))
    p = np.zeros(A.shape[1], dtype=np.int64)
    p[v] = 1
    left = minimalize(np.vstack([A[A[:, v] == 0], p[None, :]]))
    right = minimalize(np.where((A[:, v] > 0)[:, None], A - p, A))
    return _add(_numerator(left), _shift(_numerator(right), 1))


def monomial_numerator(generators: Sequence[Tuple[int, ...]], num_vars: int) -> List[int]:
    """Numerator of the Hilbert series of S/M over (1-t)^num_vars."""
    if not generators:
        return [1]
    A = minimalize(np.array(generators, dtype=np.int64).reshape(len(generators), num_vars))
    coeffs = [int(c) for c in _numerator(A)]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1 - t)^num_vars"""

    numerator: Tuple[int, ...]
    num_vars: int

    def reduced(self) -> Tuple[Tuple[int, ...], int]:
        """Cancel factors (1 - t); returns (numerator, denominator exponent)."""
        coeffs = list(self.numerator)
        exponent = self.num_vars
        if not any(coeffs):
            return (0,), 0
        while exponent > 0 and sum(coeffs) == 0:
            prefix, total = [], 0
            for c in coeffs[:-1]:
                total += c
                prefix.append(total)
            coeffs = prefix or [0]
            exponent -= 1
        return tuple(coeffs), exponent

    def krull_dim(self) -> int:
        """Pole order at t = 1; -1 for the zero module."""
        if not any(self.numerator):
            return -1
        return self.reduced()[1]

    def degree(self) -> int:
        if not any(self.numerator):
            return 0
        return sum(self.reduced()[0])

    def dimension_at(self, d: int) -> int:
        n = self.num_vars
        total = 0
        for k, c in enumerate(self.numerator):
            if d - k < 0:
                break
            total += c * (comb(d - k + n - 1, n - 1) if n > 0 else int(d == k))
        return total

    def values(self, lo: int, hi: int) -> List[int]:
        return [self.dimension_at(d) for d in range(lo, hi + 1)]

    def hilbert_polynomial_values(self, degrees: Sequence[int]) -> List[int]:
        """Values of the Hilbert polynomial, from the reduced form."""
        coeffs, e = self.reduced()
        out = []
        for d in degrees:
            if e == 0:
                out.append(0)
                continue
            out.append(sum(c * comb(d - k + e - 1, e - 1) for k, c in enumerate(coeffs)))
        return out

    def to_dict(self):
        return {"numerator": list(self.numerator), "denominatorExponent": self.num_vars}

    def __str__(self) -> str:
        pieces = []
        for k, c in enumerate(self.numerator):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return f"({' '.join(pieces) or '0'})/(1-t)^{self.num_vars}"
