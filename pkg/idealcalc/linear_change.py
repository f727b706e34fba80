"""
LinearChange - seeded invertible coordinate changes and general linear forms.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .config import RANDOM_RETRY_BOUND
from .errors import DegenerateDrawError, DimensionMismatchError
from .linalg import inverse, rank
from .polynomial import Polynomial, PolynomialRing

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinearChange:
    """
    Ring automorphism x_i -> sum_j matrix[i, j] x_j.

    The first m coordinate images are the "general linear forms" handed out
    by random_linear_forms.
    """

    ring: PolynomialRing
    matrix: np.ndarray
    seed: int = -1

    def __post_init__(self):
        n = self.ring.num_vars
        if self.matrix.shape != (n, n):
            raise DimensionMismatchError(f"change matrix {self.matrix.shape} for {n} variables")

    @classmethod
    def identity(cls, ring: PolynomialRing) -> "LinearChange":
        return cls(ring, ring.field.eye(ring.num_vars))

    @classmethod
    def permutation(cls, ring: PolynomialRing, perm: List[int]) -> "LinearChange":
        """x_i -> x_{perm[i]}"""
        m = ring.field.zeros((ring.num_vars, ring.num_vars))
        for i, j in enumerate(perm):
            m[i, j] = ring.field.one
        return cls(ring, m)

    def images(self) -> List[Polynomial]:
        return [self.ring.linear_form(list(row)) for row in self.matrix]

    def inverse(self) -> "LinearChange":
        return LinearChange(self.ring, inverse(self.ring.field, self.matrix), self.seed)

    def apply(self, f: Polynomial) -> Polynomial:
        return apply_change(f, self)


def apply_change(f: Polynomial, change: LinearChange) -> Polynomial:
    if f.ring.num_vars != change.ring.num_vars:
        raise DimensionMismatchError(
            f"change on {change.ring.num_vars} variables applied to a polynomial in {f.ring.num_vars}"
        )
    images = [g if g.ring == f.ring else g.map_terms(f.ring, lambda e: e) for g in change.images()]
    return f.substitute(images)


def random_linear_forms(ring: PolynomialRing, count: int, seed: int) -> Tuple[List[Polynomial], LinearChange]:
    """
    Draw `count` general linear forms.

    Args:
        ring: ambient ring
        count: number of forms, at most ring.num_vars
        seed: numpy seed; the same seed gives the same forms

    Returns:
        (forms, change) where forms are the first `count` images of the change
    """
    n = ring.num_vars
    if count > n:
        raise DimensionMismatchError(f"cannot draw {count} independent linear forms in {n} variables")
    field = ring.field
    rng = np.random.default_rng(seed)
    for attempt in range(RANDOM_RETRY_BOUND):
        matrix = field.reduce(field.random_elements(rng, (n, n)))
        if rank(field, matrix) == n:
            change = LinearChange(ring, matrix, seed)
            return change.images()[:count], change
        logger.warning("degenerate linear change for seed %d (attempt %d), redrawing", seed, attempt + 1)
    raise DegenerateDrawError(f"no invertible change found for seed {seed} after {RANDOM_RETRY_BOUND} draws")
