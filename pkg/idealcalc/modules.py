"""
Graded modules: presentations by generators and relations, and finite
graded modules held as vector spaces per degree with variable actions.
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatchError, IdealCalcError, UncertifiedWindowError
from .groebner import GroebnerBasis, ModuleOrder, VectorElement, buchberger, minimal_generators, normal_form, syzygy_module
from .linalg import column_space_basis, complement_basis, nullspace, rank, solve
from .polynomial import Polynomial, PolynomialRing, mono_mul, monomials_of_degree

logger = logging.getLogger(__name__)

Window = Tuple[int, int]


# =============================================================================
# PRESENTATIONS
# =============================================================================

class GradedModulePresentation:
    """
    coker(relations) with generators in degrees `twists`.

    Usage:
        M = GradedModulePresentation(S, [0], [VectorElement.from_polynomial(f) for f in gens])
    """

    def __init__(self, ring: PolynomialRing, twists: Sequence[int], relations: Sequence[VectorElement] = ()):
        self.ring = ring
        self.twists = tuple(twists)
        rels = []
        for v in relations:
            if v.rank != len(self.twists):
                raise DimensionMismatchError(f"relation of rank {v.rank} for {len(self.twists)} generators")
            if not v.is_zero():
                rels.append(VectorElement(ring, v.terms, len(self.twists), self.twists, normalized=True))
        self.relations = rels
        self._gb: Optional[GroebnerBasis] = None

    @property
    def num_generators(self) -> int:
        return len(self.twists)

    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.relations, ModuleOrder(self.ring.order, twists=self.twists),
                                  ring=self.ring, rank=len(self.twists), twists=self.twists)
        return self._gb

    def standard_basis(self, degree: int) -> List[Tuple[int, Tuple[int, ...]]]:
        """Standard monomials (component, exponents) of the given degree."""
        if not self.twists:
            return []
        G = self.groebner()
        n = self.ring.num_vars
        return [(c, m) for c, a in enumerate(self.twists)
                for m in monomials_of_degree(n, degree - a) if G.is_standard((c, m))]

    def hilbert_function(self, degree: int) -> int:
        return len(self.standard_basis(degree))

    def finite_range(self) -> Optional[Window]:
        """
        Degrees carrying the module when it has finite length, else None.

        A component has finite length iff its lead terms contain a pure
        power of every variable; standard monomials x^e then have
        e_v < a_v, so the component vanishes past twist + sum(a_v - 1).
        """
        if not self.twists:
            return (0, -1)
        leads = self.groebner().leads
        n = self.ring.num_vars
        lows, tops = [], []
        for c, a in enumerate(self.twists):
            if (c, (0,) * n) in leads:
                continue
            bound = 0
            for v in range(n):
                powers = [e[v] for lc, e in leads if lc == c and e[v] > 0 and sum(e) == e[v]]
                if not powers:
                    return None
                bound += min(powers) - 1
            lows.append(a)
            tops.append(a + bound)
        if not lows:
            return (0, -1)
        return (min(lows), max(tops))

    def is_finite(self) -> bool:
        return self.finite_range() is not None

    def __repr__(self) -> str:
        return f"GradedModulePresentation({len(self.twists)} generators, {len(self.relations)} relations)"


# =============================================================================
# FINITE GRADED MODULES
# =============================================================================

@dataclass
class FiniteGradedModule:
    """
    Module held degree by degree on the window [lo, hi].

    actions[v][d] is the matrix (dim d+1 x dim d) of multiplication by x_v,
    stored for lo <= d < hi. When `certified` the module is zero outside
    the window; otherwise nothing is known there.
    """

    ring: PolynomialRing
    lo: int
    hi: int
    pieces: Dict[int, List[str]]
    actions: List[Dict[int, np.ndarray]]
    certified: bool = True
    notes: List[str] = dc_field(default_factory=list)

    @classmethod
    def zero(cls, ring: PolynomialRing) -> "FiniteGradedModule":
        return cls(ring, 0, -1, {}, [dict() for _ in range(ring.num_vars)], True)

    @property
    def field(self):
        return self.ring.field

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def in_window(self, d: int) -> bool:
        return self.lo <= d <= self.hi

    def dim(self, d: int) -> int:
        if self.in_window(d):
            return len(self.pieces.get(d, []))
        if self.certified:
            return 0
        raise UncertifiedWindowError(f"degree {d} lies outside the window [{self.lo}, {self.hi}]")

    def dims(self) -> Dict[int, int]:
        return {d: len(self.pieces[d]) for d in self.degrees() if self.pieces.get(d)}

    def total_dim(self) -> int:
        return sum(self.dims().values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def has_action(self, d: int) -> bool:
        """Whether multiplication out of degree d is known."""
        return self.certified or self.lo <= d < self.hi

    def action(self, v: int, d: int) -> np.ndarray:
        if self.lo <= d < self.hi:
            return self.actions[v][d]
        if self.certified:
            return self.field.zeros((self.dim(d + 1), self.dim(d)))
        raise UncertifiedWindowError(f"action out of degree {d} is not known on [{self.lo}, {self.hi}]")

    def linear_action(self, coefficients: Sequence, d: int) -> np.ndarray:
        """Matrix of multiplication by sum_v c_v x_v out of degree d."""
        f = self.field
        out = f.zeros(self.action(0, d).shape)
        for v, c in enumerate(coefficients):
            c = f.element(c)
            if c != 0:
                out = f.reduce(out + self.action(v, d) * c)
        return out

    def commutes(self) -> bool:
        f = self.field
        n = self.ring.num_vars
        for d in range(self.lo, self.hi - 1):
            for i in range(n):
                for j in range(i + 1, n):
                    a = f.matmul(self.action(j, d + 1), self.action(i, d))
                    b = f.matmul(self.action(i, d + 1), self.action(j, d))
                    if np.any(a != b):
                        return False
        return True

    def is_annihilated_by(self, forms: Sequence[Polynomial]) -> bool:
        for L in forms:
            if L.is_zero():
                continue
            coeffs = L.linear_coefficients()
            for d in self.degrees():
                if self.has_action(d) and np.any(self.linear_action(coeffs, d) != 0):
                    return False
        return True

    def is_annihilated_by_maximal_ideal(self) -> bool:
        return self.is_annihilated_by(self.ring.gens())

    # ====== constructions ======

    def submodule(self, bases: Dict[int, np.ndarray]) -> "FiniteGradedModule":
        """Submodule whose degree-d piece is spanned by the independent columns of bases[d]."""
        f = self.field
        n = self.ring.num_vars
        full = {d: bases.get(d, f.zeros((self.dim(d), 0))) for d in self.degrees()}
        pieces = {d: [f"s{d}_{k}" for k in range(b.shape[1])] for d, b in full.items() if b.shape[1]}
        actions: List[Dict[int, np.ndarray]] = [dict() for _ in range(n)]
        for d in range(self.lo, self.hi):
            for v in range(n):
                actions[v][d] = solve(f, full[d + 1], f.matmul(self.action(v, d), full[d]))
        return FiniteGradedModule(self.ring, self.lo, self.hi, pieces, actions, self.certified)

    def quotient(self, bases: Dict[int, np.ndarray]) -> "FiniteGradedModule":
        """Quotient by the submodule spanned degreewise by bases[d]."""
        f = self.field
        n = self.ring.num_vars
        subs = {d: column_space_basis(f, bases.get(d, f.zeros((self.dim(d), 0)))) for d in self.degrees()}
        comps = {d: complement_basis(f, subs[d], self.dim(d)) for d in self.degrees()}
        pieces = {d: [f"q{d}_{k}" for k in range(c.shape[1])] for d, c in comps.items() if c.shape[1]}
        actions: List[Dict[int, np.ndarray]] = [dict() for _ in range(n)]
        for d in range(self.lo, self.hi):
            k = subs[d + 1].shape[1]
            frame = np.hstack([subs[d + 1], comps[d + 1]])
            for v in range(n):
                coords = solve(f, frame, f.matmul(self.action(v, d), comps[d]))
                actions[v][d] = coords[k:, :]
        return FiniteGradedModule(self.ring, self.lo, self.hi, pieces, actions, self.certified)

    def dual(self, shift: int = 0) -> "FiniteGradedModule":
        """N_j = (M_{-j-shift})^*, with x_v acting by the transpose."""
        n = self.ring.num_vars
        lo, hi = -self.hi - shift, -self.lo - shift
        pieces = {j: [f"{label}*" for label in self.pieces[-j - shift]]
                  for j in range(lo, hi + 1) if self.pieces.get(-j - shift)}
        actions: List[Dict[int, np.ndarray]] = [dict() for _ in range(n)]
        for j in range(lo, hi):
            for v in range(n):
                actions[v][j] = np.array(self.action(v, -j - 1 - shift).T, copy=True)
        return FiniteGradedModule(self.ring, lo, hi, pieces, actions, self.certified)

    def shifted(self, k: int) -> "FiniteGradedModule":
        """M(k), whose degree d is degree d + k of M."""
        pieces = {d - k: labels for d, labels in self.pieces.items()}
        actions = [{d - k: m for d, m in per_var.items()} for per_var in self.actions]
        return FiniteGradedModule(self.ring, self.lo - k, self.hi - k, pieces, actions, self.certified)

    def cyclic_submodule_bases(self, degree: int, vector: np.ndarray) -> Dict[int, np.ndarray]:
        """Degreewise spans of S * vector for a vector of the given degree."""
        f = self.field
        bases = {degree: column_space_basis(f, vector.reshape(-1, 1))}
        for d in range(degree, self.hi):
            images = np.hstack([f.matmul(self.action(v, d), bases[d]) for v in range(self.ring.num_vars)])
            bases[d + 1] = column_space_basis(f, images)
        return bases

    def to_dict(self) -> Dict[str, object]:
        return {
            "degrees": {str(d): v for d, v in sorted(self.dims().items())},
            "total": self.total_dim(),
            "certified": self.certified,
            "window": [self.lo, self.hi],
        }

    def __repr__(self) -> str:
        return f"FiniteGradedModule(dims={self.dims()}, certified={self.certified})"


# =============================================================================
# CONSTRUCTIONS
# =============================================================================

def to_finite(M: GradedModulePresentation, window: Optional[Window] = None) -> FiniteGradedModule:
    """
    Degreewise bases from standard monomials, actions by multiply-then-reduce.

    A finite-length module is computed on its whole support and certified.
    Otherwise the window is required and the result is flagged uncertified.

    Raises:
        UncertifiedWindowError: infinite length and no window
    """
    support = M.finite_range()
    if window is None:
        if support is None:
            raise UncertifiedWindowError("module is not of finite length; a degree window is required")
        lo, hi = support
        certified = True
    else:
        lo, hi = window
        certified = support is not None and (support[0] > support[1] or lo <= support[0] and support[1] <= hi)
        if not certified:
            logger.info("module restricted to window [%d, %d] without certificate", lo, hi)
    ring = M.ring
    field = ring.field
    n = ring.num_vars
    bases = {d: M.standard_basis(d) for d in range(lo, hi + 1)}
    pieces = {d: [_label(ring, t) for t in b] for d, b in bases.items() if b}
    actions: List[Dict[int, np.ndarray]] = [dict() for _ in range(n)]
    units = [tuple(int(k == v) for k in range(n)) for v in range(n)]
    for d in range(lo, hi):
        src, dst = bases[d], bases[d + 1]
        position = {t: k for k, t in enumerate(dst)}
        for v in range(n):
            A = field.zeros((len(dst), len(src)))
            for col, (c, m) in enumerate(src):
                image = VectorElement(ring, {(c, mono_mul(m, units[v])): field.one},
                                      M.num_generators, M.twists, normalized=True)
                for t, value in normal_form(image, M.groebner()).terms.items():
                    A[position[t], col] = value
            actions[v][d] = A
    logger.debug("finite module on [%d, %d]: %s", lo, hi, {d: len(b) for d, b in bases.items() if b})
    return FiniteGradedModule(ring, lo, hi, pieces, actions, certified)


def _label(ring: PolynomialRing, term) -> str:
    c, e = term
    mono = "*".join(ring.var_names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k) or "1"
    return f"{mono}*e{c}"


def subquotient(kernel: Sequence[VectorElement], boundary: Sequence[VectorElement],
                ring: PolynomialRing) -> GradedModulePresentation:
    """
    Presentation of K/B for submodules B ⊆ K of one free module generated
    by `kernel` and `boundary`. Generators are minimal generators of K;
    relations are the K-coordinates of the syzygies of [K | B].
    """
    K = minimal_generators(kernel) if kernel else []
    if not K:
        return GradedModulePresentation(ring, [], [])
    B = [b for b in boundary if not b.is_zero()]
    gen_twists = [k.degree() for k in K]
    relations = syzygy_module(list(K) + B, gen_twists + [b.degree() for b in B])
    p = len(K)
    projected = [VectorElement(ring, {(c, e): v for (c, e), v in r.terms.items() if c < p},
                               p, gen_twists, normalized=True) for r in relations]
    return GradedModulePresentation(ring, gen_twists, projected)


def annihilator_submodule(M: FiniteGradedModule, A) -> FiniteGradedModule:
    """
    (0 :_M A) for A an Ideal or a list generated by linear forms: degreewise
    kernel of the stacked actions. A degree whose outgoing action is unknown
    keeps its whole piece.
    """
    forms = list(A.generators) if hasattr(A, "generators") else list(A)
    coeffs = []
    for L in forms:
        if L.is_zero():
            continue
        if L.degree() != 1:
            raise IdealCalcError(f"annihilators are taken for linear forms, got {L}")
        coeffs.append(L.linear_coefficients())
    f = M.field
    bases: Dict[int, np.ndarray] = {}
    for d in M.degrees():
        if not coeffs or not M.has_action(d):
            bases[d] = f.eye(M.dim(d))
        else:
            bases[d] = nullspace(f, np.vstack([M.linear_action(c, d) for c in coeffs]))
    return M.submodule(bases)


def nu_module(M: FiniteGradedModule) -> int:
    """Minimal number of generators: sum_d dim M_d - rank(m_1 M_{d-1} -> M_d)."""
    if not M.certified:
        raise UncertifiedWindowError("minimal generator count needs a certified module")
    return nu_in_degrees(M, M.degrees())


def nu_in_degrees(M: FiniteGradedModule, degrees: Iterable[int]) -> int:
    """Generators of M counted in the given degrees only; the action into each must be known."""
    return sum(M.dim(d) - rank(M.field, _incoming(M, d)) for d in degrees)


def _incoming(M: FiniteGradedModule, d: int) -> np.ndarray:
    """Columns spanning m_1 * M_{d-1} inside M_d."""
    if d - 1 < M.lo:
        return M.field.zeros((M.dim(d), 0))
    return np.hstack([M.action(v, d - 1) for v in range(M.ring.num_vars)])


def finite_module_presentation(M: FiniteGradedModule) -> GradedModulePresentation:
    """
    Presentation of a certified finite module: generators lift a basis of
    M / mM, relations span the kernel of the cover in degrees up to hi + 1.
    """
    if not M.certified:
        raise UncertifiedWindowError("presentation needs a certified module")
    ring, f, n = M.ring, M.field, M.ring.num_vars
    generators: List[Tuple[int, np.ndarray]] = []
    for d in M.degrees():
        comp = complement_basis(f, column_space_basis(f, _incoming(M, d)), M.dim(d))
        generators.extend((d, comp[:, k]) for k in range(comp.shape[1]))
    if not generators:
        return GradedModulePresentation(ring, [], [])
    twists = [d for d, _ in generators]
    relations: List[VectorElement] = []
    for e in range(min(twists), M.hi + 2):
        basis = [(c, m) for c, a in enumerate(twists) for m in monomials_of_degree(n, e - a)]
        if not basis:
            continue
        cover = f.zeros((M.dim(e), len(basis)))
        for k, (c, m) in enumerate(basis):
            cover[:, k] = _apply_monomial(M, generators[c], m)
        kernel = nullspace(f, cover)
        for k in range(kernel.shape[1]):
            terms = {basis[i]: f.element(kernel[i, k]) for i in range(len(basis)) if kernel[i, k] != 0}
            relations.append(VectorElement(ring, terms, len(twists), twists, normalized=True))
    return GradedModulePresentation(ring, twists, minimal_generators(relations))


def _apply_monomial(M: FiniteGradedModule, generator: Tuple[int, np.ndarray], m: Tuple[int, ...]) -> np.ndarray:
    d, vec = generator
    cur = vec.reshape(-1, 1)
    for v, k in enumerate(m):
        for _ in range(k):
            cur = M.field.matmul(M.action(v, d), cur)
            d += 1
    return cur[:, 0]
