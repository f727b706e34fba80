"""
Koszul complexes K((L_1, ..., L_s); M) of linear forms on finite graded
modules, and their homology degree by degree.

K_i = sum over i-subsets T of M(-i) e_T, with
    d(e_T ⊗ m) = sum_k (-1)^k e_{T - t_k} ⊗ L_{t_k} m
for T = {t_0 < ... < t_{i-1}}.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence

import numpy as np

from .config import StabilizationStatus
from .errors import IdealCalcError
from .linalg import in_column_space, nullspace, rank
from .modules import FiniteGradedModule
from .polynomial import Polynomial

logger = logging.getLogger(__name__)


@dataclass
class KoszulHomologyResult:
    index: int
    dims: Dict[int, int]
    total_dim: int
    status: StabilizationStatus
    annihilated: Optional[bool] = None
    degrees: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "index": self.index,
            "degrees": {str(d): v for d, v in sorted(self.dims.items()) if v},
            "total": self.total_dim,
            "certified": self.status is StabilizationStatus.CERTIFIED,
            "annihilated": self.annihilated,
        }


def _coefficients(forms: Sequence[Polynomial], num_vars: int) -> List[List]:
    out = []
    for L in forms:
        if L.is_zero():
            out.append([0] * num_vars)
        elif L.degree() != 1 or not L.is_homogeneous():
            raise IdealCalcError(f"Koszul complexes take linear forms, got {L}")
        else:
            out.append(L.linear_coefficients())
    return out


class KoszulComplex:
    """Koszul complex of linear forms on a FiniteGradedModule."""

    def __init__(self, forms: Sequence[Polynomial], M: FiniteGradedModule):
        self.M = M
        self.forms = list(forms)
        self.s = len(self.forms)
        self.coefficients = _coefficients(self.forms, M.ring.num_vars)
        self.subsets = [list(combinations(range(self.s), i)) for i in range(self.s + 1)]
        self._cache: Dict = {}

    def rank(self, i: int) -> int:
        return comb(self.s, i) if 0 <= i <= self.s else 0

    def known(self, i: int, e: int) -> bool:
        """Whether d_i out of M-degree e is determined by the data of M."""
        if i < 0 or i > self.s:
            return True
        if self.M.certified:
            return True
        if not self.M.in_window(e):
            return False
        return i == 0 or self.M.has_action(e)

    def dim(self, i: int, e: int) -> int:
        """dim of the summand of K_i built on M_e."""
        r = self.rank(i)
        return r * self.M.dim(e) if r else 0

    def differential(self, i: int, e: int) -> np.ndarray:
        """d_i restricted to the M_e part of K_i, landing in the M_{e+1} part of K_{i-1}."""
        key = (i, e)
        if key in self._cache:
            return self._cache[key]
        f = self.M.field
        if i <= 0 or i > self.s:
            out = f.zeros((self.dim(i - 1, e + 1), self.dim(i, e)))
            self._cache[key] = out
            return out
        src_dim, dst_dim = self.M.dim(e), self.M.dim(e + 1)
        target_index = {T: k for k, T in enumerate(self.subsets[i - 1])}
        out = f.zeros((self.rank(i - 1) * dst_dim, self.rank(i) * src_dim))
        actions = [self.M.linear_action(c, e) for c in self.coefficients]
        for col, T in enumerate(self.subsets[i]):
            for k, t in enumerate(T):
                row = target_index[T[:k] + T[k + 1:]]
                block = actions[t] if k % 2 == 0 else f.reduce(-actions[t])
                out[row * dst_dim:(row + 1) * dst_dim, col * src_dim:(col + 1) * src_dim] = block
        self._cache[key] = out
        return out

    def multiplication(self, t: int, i: int, e: int) -> np.ndarray:
        """L_t acting on the M_e part of K_i, block diagonal."""
        f = self.M.field
        A = self.M.linear_action(self.coefficients[t], e)
        return f.reduce(np.kron(f.eye(self.rank(i)), A))

    def valid(self, i: int, e: int) -> bool:
        """Homology at K_i over M-degree e is determined."""
        return self.known(i, e) and (i + 1 > self.s or self.known(i + 1, e - 1))

    def homology_dim(self, i: int, e: int) -> int:
        f = self.M.field
        dim = self.dim(i, e)
        if dim == 0:
            return 0
        return dim - rank(f, self.differential(i, e)) - rank(f, self.differential(i + 1, e - 1))

    def cycles(self, i: int, e: int) -> np.ndarray:
        return nullspace(self.M.field, self.differential(i, e))

    def boundaries(self, i: int, e: int) -> np.ndarray:
        return self.differential(i + 1, e - 1)

    def homology_annihilated(self, i: int, e: int) -> bool:
        """Each L_t maps cycles over M_e into boundaries over M_{e+1}."""
        Z = self.cycles(i, e)
        if Z.shape[1] == 0:
            return True
        B = self.boundaries(i, e + 1)
        for t in range(self.s):
            image = self.M.field.matmul(self.multiplication(t, i, e), Z)
            if not in_column_space(self.M.field, B, image):
                return False
        return True


def koszul_homology(forms: Sequence[Polynomial], M: FiniteGradedModule, i: int,
                    check_annihilation: bool = True) -> KoszulHomologyResult:
    """
    ℍ_i((forms); M) degreewise. Degrees are those of K_i, so the M_e part
    contributes to degree e + i.

    A window-limited M yields status WINDOW_LIMITED and reports only the
    degrees whose neighbouring differentials are known.
    """
    K = KoszulComplex(forms, M)
    dims: Dict[int, int] = {}
    checked: List[int] = []
    annihilated: Optional[bool] = None
    if 0 <= i <= K.s:
        for e in M.degrees():
            if not K.valid(i, e):
                continue
            dims[e + i] = K.homology_dim(i, e)
            checked.append(e + i)
            if check_annihilation and dims[e + i] and K.valid(i, e + 1) and K.known(i, e):
                ok = K.homology_annihilated(i, e)
                annihilated = ok if annihilated is None else annihilated and ok
        if check_annihilation and annihilated is None and checked:
            annihilated = True
    status = StabilizationStatus.CERTIFIED if M.certified else StabilizationStatus.WINDOW_LIMITED
    total = sum(dims.values())
    logger.debug("Koszul homology H_%d: %s (%s)", i, {d: v for d, v in dims.items() if v}, status.value)
    return KoszulHomologyResult(i, dims, total, status, annihilated, checked)


def koszul_homology_dims(forms: Sequence[Polynomial], M: FiniteGradedModule) -> Dict[int, Dict[int, int]]:
    """All homology dims, index -> degree -> dim."""
    return {i: koszul_homology(forms, M, i, check_annihilation=False).dims for i in range(len(forms) + 1)}
