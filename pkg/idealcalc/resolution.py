"""
Graded free resolutions: iterated Schreyer syzygies, minimization by unit
cancellation, Betti tables and the invariants read off them.
"""

import logging
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import IdealCalcError
from .groebner import (
    GroebnerBasis,
    ModuleOrder,
    TermDict,
    VectorElement,
    _axpy,
    buchberger,
    groebner_from_elements,
    schreyer_order,
    syzygies,
)
from .ideal import Ideal, krull_dim
from .linalg import rank as matrix_rank
from .polynomial import Polynomial, PolynomialRing, monomials_of_degree

logger = logging.getLogger(__name__)


# =============================================================================
# BETTI TABLE
# =============================================================================

class BettiTable:
    """
    Graded Betti numbers beta[j, d]: rank of S(-d) in F_j.

    Printed Macaulay2-style: column j, row d - j, zeros as '.'.
    """

    def __init__(self, entries: Dict[Tuple[int, int], int]):
        self.entries = {k: v for k, v in entries.items() if v}

    @classmethod
    def from_twists(cls, twists: Sequence[Sequence[int]]) -> "BettiTable":
        entries: Dict[Tuple[int, int], int] = {}
        for j, degrees in enumerate(twists):
            for d in degrees:
                entries[(j, d)] = entries.get((j, d), 0) + 1
        return cls(entries)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    @property
    def length(self) -> int:
        return max((j for j, _ in self.entries), default=-1)

    def ranks(self) -> List[int]:
        return [sum(v for (j, _), v in self.entries.items() if j == k) for k in range(self.length + 1)]

    def regularity(self) -> int:
        return max((d - j for j, d in self.entries), default=0)

    def numerator(self) -> List[int]:
        """sum_j (-1)^j sum_d beta[j, d] t^d, coefficients from t^0."""
        top = max((d for _, d in self.entries), default=0)
        coeffs = [0] * (top + 1)
        for (j, d), v in self.entries.items():
            if d < 0:
                raise IdealCalcError("numerator needs non-negative twists")
            coeffs[d] += (-1) ** j * v
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def to_dict(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for (j, d), v in sorted(self.entries.items()):
            out.setdefault(str(j), {})[str(d)] = v
        return out

    def to_csv(self) -> str:
        lines = ["index,degree,rank"]
        for (j, d), v in sorted(self.entries.items()):
            lines.append(f"{j},{d},{v}")
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        cols = self.length + 1
        rows = sorted({d - j for j, d in self.entries})
        lo, hi = rows[0], rows[-1]
        totals = self.ranks()
        width = [max(len(str(k)), len(str(totals[k]))) for k in range(cols)]
        head = f"{'':>6} " + " ".join(f"{k:>{width[k]}}" for k in range(cols))
        total = f"{'total:':>6} " + " ".join(f"{totals[k]:>{width[k]}}" for k in range(cols))
        lines = [head, total]
        for r in range(lo, hi + 1):
            cells = [str(self[(k, k + r)]) if self[(k, k + r)] else "." for k in range(cols)]
            lines.append(f"{str(r) + ':':>6} " + " ".join(f"{c:>{width[k]}}" for k, c in enumerate(cells)))
        return "\n".join(lines)


# =============================================================================
# FREE RESOLUTION
# =============================================================================

class FreeResolution:
    """
    Chain 0 <- F_0 <- F_1 <- ... <- F_s of graded free modules.

    twists[j] lists the generator degrees of F_j; maps[j] is phi_{j+1}:
    F_{j+1} -> F_j stored as one term map per column. For an ideal the
    augmentation lists the images of the basis of F_0 in S.
    """

    def __init__(self, ring: PolynomialRing, twists: List[List[int]], maps: List[List[TermDict]],
                 augmentation: Optional[List[VectorElement]] = None, minimal: bool = False):
        self.ring = ring
        self.twists = [list(t) for t in twists]
        self.maps = maps
        self.augmentation = augmentation
        self.minimal = minimal

    @property
    def length(self) -> int:
        return max((j for j, t in enumerate(self.twists) if t), default=-1)

    def ranks(self) -> List[int]:
        return [len(t) for t in self.twists[: self.length + 1]]

    def betti(self) -> BettiTable:
        return BettiTable.from_twists(self.twists)

    def regularity(self) -> int:
        return self.betti().regularity()

    def columns(self, j: int) -> List[VectorElement]:
        """Columns of phi_j as elements of F_{j-1}."""
        target = self.twists[j - 1]
        return [VectorElement(self.ring, col, len(target), target, normalized=True)
                for col in self.maps[j - 1]]

    def matrix(self, j: int) -> List[List[Polynomial]]:
        """phi_j as rows x columns of polynomials."""
        cols = self.columns(j)
        return [[col.entry(r) for col in cols] for r in range(len(self.twists[j - 1]))]

    def is_minimal(self) -> bool:
        zero = (0,) * self.ring.num_vars
        return not any(e == zero for cols in self.maps for col in cols for (_, e) in col)

    def quotient(self) -> "FreeResolution":
        """Resolution of S/I from a resolution of I with augmentation."""
        if self.augmentation is None:
            raise IdealCalcError("only ideal resolutions have a quotient resolution")
        first = [dict(g.terms) for g in self.augmentation]
        twists = [[0]] + self.twists
        maps = [first] + self.maps if first else []
        if not first:
            twists = [[0]]
        return FreeResolution(self.ring, twists, maps, None, minimal=False)

    def to_dict(self) -> Dict[str, object]:
        return {
            "twists": [sorted(t) for t in self.twists[: self.length + 1]],
            "ranks": self.ranks(),
            "betti": self.betti().to_dict(),
            "length": self.length,
            "minimal": self.minimal,
        }

    def __repr__(self) -> str:
        return f"FreeResolution(ranks={self.ranks()}, minimal={self.minimal})"


def _sort_for_schreyer(G: GroebnerBasis, var: int) -> GroebnerBasis:
    """Within each lead component, decreasing exponent of x_var."""
    leads = G.leads
    n = G.ring.num_vars
    idx = sorted(range(len(G)), key=lambda k: (leads[k][0], -leads[k][1][var] if var < n else 0, k))
    return groebner_from_elements([G.elements[k] for k in idx], G.order, G.ring, G.rank, G.twists)


def free_resolution(M, degree_guard: Optional[int] = None) -> FreeResolution:
    """
    Schreyer resolution of an Ideal or a GradedModulePresentation.

    Each Groebner basis is sorted so that the leads of the next syzygies
    avoid one more variable, which bounds the length by the number of
    variables. The result is generally not minimal.
    """
    ring = M.ring
    augmentation = None
    if isinstance(M, Ideal):
        if M.is_zero():
            return FreeResolution(ring, [[]], [], [], minimal=True)
        current = _sort_for_schreyer(M.groebner(degree_guard), 0)
        augmentation = list(current.elements)
        twists = [current.element_degrees()]
        maps: List[List[TermDict]] = []
    else:
        twists = [list(M.twists)]
        maps = []
        G = buchberger(M.relations, ModuleOrder(ring.order, twists=M.twists), ring=ring,
                       rank=len(M.twists), twists=M.twists, degree_guard=degree_guard)
        current = _sort_for_schreyer(G, 0)
        if len(current):
            twists.append(current.element_degrees())
            maps.append([dict(g.terms) for g in current.elements])
    level = 0
    while len(current):
        syz = syzygies(current)
        if not syz:
            break
        level += 1
        if level > ring.num_vars + 1:
            raise IdealCalcError("Schreyer resolution did not terminate")
        nxt = groebner_from_elements(syz, schreyer_order(current), ring, len(current), current.element_degrees())
        current = _sort_for_schreyer(nxt, level)
        twists.append(current.element_degrees())
        maps.append([dict(g.terms) for g in current.elements])
    logger.info("Schreyer resolution with ranks %s", [len(t) for t in twists])
    return FreeResolution(ring, twists, maps, augmentation, minimal=False)


def minimize(R: FreeResolution) -> FreeResolution:
    """
    Cancel unit entries until none remain. A unit u at row r, column c of
    phi_j splits off S(-a) -> S(-a): the other columns are cleared in row r,
    then row r and column c are deleted, row c of phi_{j+1} and column r of
    phi_{j-1} (or generator r of the augmentation) are dropped.
    """
    field = R.ring.field
    zero = (0,) * R.ring.num_vars
    twists = [list(t) for t in R.twists]
    maps = [[dict(col) for col in cols] for cols in R.maps]
    aug = list(R.augmentation) if R.augmentation is not None else None
    cancelled = 0
    for j in range(len(maps)):
        while True:
            pivot = _find_unit(maps[j], zero)
            if pivot is None:
                break
            c, r, u = pivot
            pivot_col = maps[j][c]
            new_cols = []
            for k, col in enumerate(maps[j]):
                if k == c:
                    continue
                row_terms = [(e, v) for (row, e), v in col.items() if row == r]
                for e, v in row_terms:
                    _axpy(col, pivot_col, field.div(v, u), e, field)
                new_cols.append({(row - (row > r), e): v for (row, e), v in col.items() if row != r})
            maps[j] = new_cols
            if j + 1 < len(maps):
                maps[j + 1] = [{(row - (row > c), e): v for (row, e), v in col.items() if row != c}
                               for col in maps[j + 1]]
            if j >= 1:
                del maps[j - 1][r]
            elif aug is not None:
                del aug[r]
            del twists[j + 1][c]
            del twists[j][r]
            cancelled += 1
    while len(twists) > 1 and not twists[-1]:
        twists.pop()
        maps.pop()
    logger.info("minimized resolution: %d cancellations, ranks %s", cancelled, [len(t) for t in twists])
    return FreeResolution(R.ring, twists, maps, aug, minimal=True)


def _find_unit(cols: List[TermDict], zero) -> Optional[Tuple[int, int, object]]:
    for c, col in enumerate(cols):
        rows = [row for (row, e) in col if e == zero]
        if rows:
            r = min(rows)
            return c, r, col[(r, zero)]
    return None


# =============================================================================
# INVARIANTS
# =============================================================================

def minimal_resolution(M, degree_guard: Optional[int] = None) -> FreeResolution:
    if isinstance(M, Ideal):
        if "minres" not in M._cache:
            M._cache["minres"] = minimize(free_resolution(M, degree_guard))
        return M._cache["minres"]
    return minimize(free_resolution(M, degree_guard))


def quotient_resolution(I: Ideal) -> FreeResolution:
    """Minimal resolution of S/I."""
    if "quotres" not in I._cache:
        I._cache["quotres"] = minimize(minimal_resolution(I).quotient())
    return I._cache["quotres"]


def betti(R: Union[FreeResolution, Ideal]) -> BettiTable:
    """Betti table of a resolution, or of S/I for an ideal."""
    if isinstance(R, Ideal):
        return quotient_resolution(R).betti()
    return R.betti()


def pd(M) -> int:
    """Projective dimension; for an ideal I this is pd(S/I)."""
    if isinstance(M, FreeResolution):
        return M.length
    if isinstance(M, Ideal):
        return quotient_resolution(M).length
    return minimal_resolution(M).length


def depth_of_quotient(I: Ideal) -> int:
    """depth S/I = numVars - pd(S/I)."""
    if I.is_unit():
        raise IdealCalcError("S/I is zero for the unit ideal")
    return I.ring.num_vars - pd(I)


def is_cohen_macaulay(I: Ideal) -> bool:
    if I.is_unit():
        return True
    return depth_of_quotient(I) == krull_dim(I)


def nu(I: Ideal) -> int:
    """Minimal number of generators."""
    if I.is_zero():
        raise IdealCalcError("the zero ideal has no generators")
    return len(minimal_resolution(I).twists[0])


def alpha(I: Ideal) -> int:
    """Least degree of a minimal generator."""
    if I.is_zero():
        raise IdealCalcError("the zero ideal has no generators")
    return min(minimal_resolution(I).twists[0])


def regularity(I: Ideal) -> int:
    """Castelnuovo-Mumford regularity of I (one more than that of S/I)."""
    return minimal_resolution(I).regularity()


# =============================================================================
# EXACTNESS
# =============================================================================

def graded_piece_matrix(columns: Sequence[TermDict], source_twists: Sequence[int],
                        target_twists: Sequence[int], degree: int, ring: PolynomialRing) -> np.ndarray:
    """Matrix of the map sending e_i to columns[i] on the degree-`degree` pieces."""
    field = ring.field
    n = ring.num_vars
    target_basis = [(r, m) for r, a in enumerate(target_twists) for m in monomials_of_degree(n, degree - a)]
    position = {t: k for k, t in enumerate(target_basis)}
    source_basis = [(i, m) for i, a in enumerate(source_twists) for m in monomials_of_degree(n, degree - a)]
    M = field.zeros((len(target_basis), len(source_basis)))
    for k, (i, m) in enumerate(source_basis):
        for (r, e), v in columns[i].items():
            M[position[(r, tuple(x + y for x, y in zip(e, m)))], k] = v
    return M


def piece_dimension(twists: Sequence[int], degree: int, num_vars: int) -> int:
    return sum(comb(degree - a + num_vars - 1, num_vars - 1) for a in twists if degree - a >= 0)


def check_exactness(R: FreeResolution, degrees: Sequence[int]) -> bool:
    """im phi_{j+1} = ker phi_j on the given degrees, for every j >= 1."""
    ring = R.ring
    for d in degrees:
        for j in range(1, len(R.maps)):
            M_j = graded_piece_matrix(R.maps[j - 1], R.twists[j], R.twists[j - 1], d, ring)
            M_next = graded_piece_matrix(R.maps[j], R.twists[j + 1], R.twists[j], d, ring)
            kernel = piece_dimension(R.twists[j], d, ring.num_vars) - matrix_rank(ring.field, M_j)
            if kernel != matrix_rank(ring.field, M_next):
                logger.warning("resolution not exact at F_%d in degree %d", j, d)
                return False
            composite = ring.field.matmul(M_j, M_next) if M_next.shape[1] else None
            if composite is not None and np.any(composite != 0):
                return False
        last = len(R.maps)
        if last >= 1:
            M_last = graded_piece_matrix(R.maps[last - 1], R.twists[last], R.twists[last - 1], d, ring)
            if matrix_rank(ring.field, M_last) != piece_dimension(R.twists[last], d, ring.num_vars):
                return False
    return True
